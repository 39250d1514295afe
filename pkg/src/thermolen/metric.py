"""Hessian of the molar Helmholtz potential f(T, v) and its Lorentzian structure.

    eta = [[-c_v/T,         -alpha/kappa_T],
           [-alpha/kappa_T,  1/(v kappa_T)]]

All 2x2 eigen-algebra is done in closed form. The eigenvector components
use the cancellation-free rewrite of (S - sqrt(Delta)), where
S = 1/(v kappa_T) + c_v/T, so the alpha -> 0 limit is reached continuously.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .eos import StatePoint
from .errors import DegeneracyError, NullVectorError, SignatureError
from .response import ResponseSet

DEFAULT_TOL = 1e-10


class Signature(str, enum.Enum):
    LORENTZIAN = "lorentzian"
    DEGENERATE = "degenerate"
    RIEMANNIAN = "riemannian"


class Character(str, enum.Enum):
    VOLUME_LIKE = "volume_like"
    TEMPERATURE_LIKE = "temperature_like"
    NULL_LIKE = "null_like"


@dataclass(frozen=True)
class MetricAtPoint:
    eta11: float
    eta12: float
    eta22: float
    det: float
    delta: float
    lambda1: float
    lambda2: float
    xi1: np.ndarray
    xi2: np.ndarray
    P: np.ndarray
    P_inv: np.ndarray
    Lambda: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.eta11, self.eta12], [self.eta12, self.eta22]])

    @property
    def scale(self) -> float:
        """Max-abs entry of the metric."""
        return max(abs(self.eta11), abs(self.eta12), abs(self.eta22))

    def quadratic_form(self, dT, dv):
        return self.eta11 * dT * dT + 2.0 * self.eta12 * dT * dv + self.eta22 * dv * dv

    def form_scale(self, dT, dv):
        """Sum of the magnitudes of the three terms of the quadratic form.

        Invariant under independent rescaling of the T and v axes, so it is
        the reference magnitude for deciding whether a vector is null.
        """
        return (abs(self.eta11) * dT * dT + 2.0 * abs(self.eta12 * dT * dv)
                + abs(self.eta22) * dv * dv)

    def reconstruct(self) -> np.ndarray:
        return self.P @ self.Lambda @ self.P_inv


@dataclass(frozen=True)
class TangentVector:
    dT: float
    dv: float
    character: Character
    q: float


def _degeneracy_ratio(eta11, eta12, eta22, det):
    denom = abs(eta11 * eta22) + eta12 * eta12
    if denom == 0.0:
        return 0.0
    return abs(det) / denom


def assemble(r: ResponseSet, state: StatePoint, *, tol=DEFAULT_TOL,
             allow_degenerate=False) -> MetricAtPoint:
    """Metric components, eigen-decomposition and diagonalizing basis at ``state``."""
    T, v = state.T, state.v
    eta11 = -r.c_v / T
    eta12 = -r.alpha / r.kappa_T
    eta22 = 1.0 / (v * r.kappa_T)
    det = eta11 * eta22 - eta12 * eta12

    s = eta22 - eta11  # 1/(v kappa_T) + c_v/T
    delta = s * s + 4.0 * eta12 * eta12
    root = math.sqrt(delta)
    trace = eta11 + eta22

    degenerate = _degeneracy_ratio(eta11, eta12, eta22, det) <= tol
    if degenerate and not allow_degenerate:
        raise DegeneracyError(
            f"metric is degenerate at T={T!r}, v={v!r} (det={det!r}); "
            "an eigenvalue vanishes")

    # larger-magnitude eigenvalue from the quadratic formula, the other from det
    if trace >= 0:
        lambda2 = 0.5 * (trace + root)
        lambda1 = det / lambda2 if lambda2 != 0 else 0.5 * (trace - root)
    else:
        lambda1 = 0.5 * (trace - root)
        lambda2 = det / lambda1 if lambda1 != 0 else 0.5 * (trace + root)

    # g = kappa_T/(2 alpha) * (S - sqrt(Delta)); xi1 = (1, -g), xi2 = (g, 1)
    swapped = False
    if abs(eta12) < 1e-12 * max(abs(eta11), abs(eta22)):
        if s >= 0:
            g = 0.0
        else:
            swapped = True
    elif s >= 0:
        g = 2.0 * eta12 / (s + root)
    else:
        g = (root - s) / (2.0 * eta12)

    if swapped:
        # diagonal with eta11 > eta22: the smaller eigenvalue lives on the v axis
        xi1 = np.array([0.0, 1.0])
        xi2 = np.array([1.0, 0.0])
        P = np.array([[0.0, 1.0], [1.0, 0.0]])
        P_inv = P.copy()
    else:
        xi1 = np.array([1.0, -g])
        xi2 = np.array([g, 1.0])
        P = np.array([[1.0, g], [-g, 1.0]])
        P_inv = np.array([[1.0, -g], [g, 1.0]]) / (1.0 + g * g)
    Lambda = np.diag([lambda1, lambda2])
    return MetricAtPoint(eta11, eta12, eta22, det, delta, lambda1, lambda2,
                         xi1, xi2, P, P_inv, Lambda)


def signature(m: MetricAtPoint, tol=DEFAULT_TOL) -> Signature:
    if _degeneracy_ratio(m.eta11, m.eta12, m.eta22, m.det) <= tol:
        return Signature.DEGENERATE
    return Signature.LORENTZIAN if m.det < 0 else Signature.RIEMANNIAN


def character_of(q, scale, tol=DEFAULT_TOL) -> Character:
    if abs(q) <= tol * scale:
        return Character.NULL_LIKE
    return Character.VOLUME_LIKE if q > 0 else Character.TEMPERATURE_LIKE


def classify_vector(m: MetricAtPoint, dT, dv, tol=DEFAULT_TOL) -> TangentVector:
    """Causal character of the tangent vector (dT, dv)."""
    if dT == 0 and dv == 0:
        raise NullVectorError("cannot classify the zero vector")
    q = m.quadratic_form(dT, dv)
    return TangentVector(dT, dv, character_of(q, m.form_scale(dT, dv), tol), q)


def null_directions(m: MetricAtPoint, tol=DEFAULT_TOL) -> tuple[float, float]:
    """The two slopes dv/dT of null vectors, ascending (negative one first)."""
    if signature(m, tol) is not Signature.LORENTZIAN:
        raise SignatureError("null directions exist only for a Lorentzian metric")
    # eta22 x**2 + 2 eta12 x + eta11 = 0; discriminant/4 = -det > 0
    half_disc = math.sqrt(-m.det)
    qq = -(m.eta12 + math.copysign(half_disc, m.eta12))
    x1 = qq / m.eta22 if m.eta22 != 0 else math.copysign(math.inf, -m.eta12)
    x2 = m.eta11 / qq
    return (x1, x2) if x1 <= x2 else (x2, x1)


def pseudo_normalize(m: MetricAtPoint, xi, tol=DEFAULT_TOL):
    """Scale ``xi`` to unit squared length; returns (unit_vector, sign of q)."""
    xi = np.asarray(xi, dtype=float)
    q = m.quadratic_form(xi[0], xi[1])
    if abs(q) <= tol * m.form_scale(xi[0], xi[1]) or q == 0:
        raise NullVectorError("vector has zero squared length and cannot be normalized")
    sign = 1 if q > 0 else -1
    return xi / math.sqrt(abs(q)), sign
