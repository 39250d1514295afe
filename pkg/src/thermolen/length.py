"""Thermodynamic length along isotherms and along general parametrized paths.

Isotherm length is the integral of sqrt(-(dp/dv)_T) dv. It is available three
ways: direct quadrature, closed forms (orders 1-3 and the quasi-ideal gas), and
the two term-by-term decompositions of the virial integrand (work form with an
integration by parts, and the coefficient-sum form).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .eos import VirialEos, require_stable
from .errors import DomainError, UnsupportedOrderError
from .metric import Character, character_of
from .quad import QuadratureConfig, gk15, integrate
from .response import ResponseProvider

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"
THEOREM = "theorem_decomposition"


@dataclass(frozen=True)
class LengthReport:
    value: float
    method: str
    err_estimate: float
    work: float
    decomposition: dict[str, float] | None = None
    orientation: int = 1
    flags: tuple[str, ...] = ()


def _ordered(v1, v2):
    return (v1, v2, 1) if v1 <= v2 else (v2, v1, -1)


def _empty(eos, T, v, method):
    eos.check_state(T, v)
    return LengthReport(0.0, method, 0.0, 0.0)


# -- quadrature -------------------------------------------------------------

def isotherm_length_quadrature(eos: VirialEos, T, v1, v2,
                               cfg: QuadratureConfig | None = None) -> LengthReport:
    lo, hi, orientation = _ordered(v1, v2)
    if lo == hi:
        return _empty(eos, T, lo, QUADRATURE)
    require_stable(eos, T, lo, hi)
    value, err = integrate(lambda v: eos.isotherm_integrand(T, v), lo, hi, cfg)
    return LengthReport(value, QUADRATURE, err, eos.work(T, lo, hi), orientation=orientation)


# -- closed forms -----------------------------------------------------------

def second_order_work_form(R, T, B, v1, v2):
    """Length for p = RT/v + RTB/v**2 written as W/sqrt(RT) plus a correction."""
    rho1 = math.sqrt(1 + 2 * B / v1)
    rho2 = math.sqrt(1 + 2 * B / v2)
    RT = R * T
    W = RT * (math.log(v2 / v1) + B * (v2 - v1) / (v1 * v2))
    return W / math.sqrt(RT) + math.sqrt(RT) * (
        math.log((1 + B / v2 + rho2) / (1 + B / v1 + rho1))
        - B * (v2 - v1) / (v1 * v2)
        - 2 * (rho2 - rho1))


def second_order_log_form(R, T, B, v1, v2):
    """Same length as a single logarithm of square roots of v and v + 2B."""
    rho1 = math.sqrt(1 + 2 * B / v1)
    rho2 = math.sqrt(1 + 2 * B / v2)
    return 2 * math.sqrt(R * T) * (
        math.log((math.sqrt(v2 + 2 * B) + math.sqrt(v2))
                 / (math.sqrt(v1 + 2 * B) + math.sqrt(v1)))
        - (rho2 - rho1))


def second_order_split(R, T, B, v1, v2):
    """(ideal part, interaction correction) of the second-order length."""
    rho1 = math.sqrt(1 + 2 * B / v1)
    rho2 = math.sqrt(1 + 2 * B / v2)
    sRT = math.sqrt(R * T)
    ideal = sRT * math.log(v2 / v1)
    interaction = sRT * (math.log((1 + B / v2 + rho2) / (1 + B / v1 + rho1))
                         - 2 * (rho2 - rho1))
    return ideal, interaction


def second_order_compact(R, T, B, v1, v2):
    """rho-form, arranged so small B loses no digits and B = 0 is exactly ideal."""
    rho1 = math.sqrt(1 + 2 * B / v1)
    rho2 = math.sqrt(1 + 2 * B / v2)
    drho = 2 * B * (v1 - v2) / (v1 * v2 * (rho1 + rho2))
    return math.sqrt(R * T) * (math.log(v2 / v1) + 2 * math.log1p(drho / (1 + rho1))
                               - 2 * drho)


def third_order_closed(R, T, B, C, v1, v2):
    """Third-order length evaluated term by term as a closed-form candidate.

    Requires C > 0. Returns the value; the caller is expected to check it
    against quadrature.
    """
    c3 = 3 * C
    s3 = math.sqrt(c3)
    q1 = math.sqrt(v1 * v1 + 2 * B * v1 + c3)
    q2 = math.sqrt(v2 * v2 + 2 * B * v2 + c3)
    first = math.log((q2 + v2 + B) / (q1 + v1 + B))
    second = math.log((s3 * q2 - B * v2 - c3) / (s3 * q1 - B * v1 - c3))
    tail = (math.sqrt(1 + 2 * B / v2 + c3 / v2 ** 2)
            - math.sqrt(1 + 2 * B / v1 + c3 / v1 ** 2))
    return math.sqrt(R * T) * (first + B / s3 * (second - math.log(v2 / v1)) - tail)


def third_order_domain_problem(B, C, v1, v2):
    """Reason the third-order closed form cannot be evaluated, or None."""
    if not C > 0:
        return "C must be positive"
    c3 = 3 * C

    def quad_poly(v):
        return v * v + 2 * B * v + c3

    candidates = [v1, v2] + ([-B] if v1 < -B < v2 else [])
    if min(quad_poly(v) for v in candidates) <= 0:
        return "v**2 + 2Bv + 3C must stay positive on the interval"
    s3 = math.sqrt(c3)
    a1 = math.sqrt(quad_poly(v1)) + v1 + B
    a2 = math.sqrt(quad_poly(v2)) + v2 + B
    b1 = s3 * math.sqrt(quad_poly(v1)) - B * v1 - c3
    b2 = s3 * math.sqrt(quad_poly(v2)) - B * v2 - c3
    if not (a1 * a2 > 0 and b1 * b2 > 0):
        return "logarithm arguments are not positive"
    return None


def isotherm_length_closed(eos: VirialEos, T, v1, v2) -> LengthReport:
    lo, hi, orientation = _ordered(v1, v2)
    if not eos.is_quasi_ideal and eos.order > 3:
        raise UnsupportedOrderError(
            f"no closed form for order {eos.order}; use quadrature")
    if lo == hi:
        return _empty(eos, T, lo, CLOSED_FORM)
    eos.check_state(T, lo)
    eos.check_state(T, hi)
    R = eos.gas_constant
    sRT = math.sqrt(R * T)
    work = eos.work(T, lo, hi)
    decomposition = None
    if eos.is_quasi_ideal:
        b = eos.excluded_volume
        value = sRT * math.log((hi - b) / (lo - b))
    elif eos.order == 1:
        value = sRT * math.log(hi / lo)
    elif eos.order == 2:
        (B,) = eos.coefficients
        if not (1 + 2 * B / lo > 0 and 1 + 2 * B / hi > 0):
            require_stable(eos, T, lo, hi)
        value = second_order_compact(R, T, B, lo, hi)
        ideal, interaction = second_order_split(R, T, B, lo, hi)
        decomposition = {"ideal": ideal, "interaction": interaction}
    else:
        B, C = eos.coefficients
        require_stable(eos, T, lo, hi)
        problem = third_order_domain_problem(B, C, lo, hi)
        if problem is not None:
            raise DomainError(f"third-order closed form not applicable ({problem}); "
                              "use quadrature")
        value = third_order_closed(R, T, B, C, lo, hi)
    return LengthReport(value, CLOSED_FORM, 0.0, work, decomposition, orientation)


# -- decompositions of the virial integrand -----------------------------------

def dxi_dv(eos: VirialEos, v):
    """Derivative of xi = stiffness(v)**-1/2, from differentiating the series."""
    acc = 0.0
    for k in range(eos.order, 1, -1):
        acc = (acc + k * (k - 1) / 2 * eos.series[k - 1]) / v
    return acc / (v * eos.stiffness(v) ** 1.5)


def dxi_dv_polynomial_form(eos: VirialEos, v):
    """Same derivative written over the polynomial v**(n-1) + 2Bv**(n-2) + ...

    Numerator B v**(2n-4) + 3C v**(2n-5) + 6D v**(2n-6) + ..., denominator
    v**((n-1)/2) * poly**(3/2).
    """
    n = eos.order
    num = sum(k * (k - 1) / 2 * eos.series[k - 1] * v ** (2 * n - 2 - k)
              for k in range(2, n + 1))
    poly = sum(k * eos.series[k - 1] * v ** (n - k) for k in range(1, n + 1))
    return num / (v ** ((n - 1) / 2) * poly ** 1.5)


def _require_virial(eos):
    if eos.is_quasi_ideal:
        raise UnsupportedOrderError("term decompositions apply to the virial form only")


def coefficient_integral(eos: VirialEos, k, lo, hi, cfg=None):
    """Integral of X_k v**-k / sqrt(stiffness) over [lo, hi] (X_1 = 1)."""
    xk = eos.series[k - 1]
    return integrate(lambda v: xk * v ** -k / math.sqrt(eos.stiffness(v)), lo, hi, cfg)


def isotherm_length_theorem(eos: VirialEos, T, v1, v2, form="sum_36",
                            cfg: QuadratureConfig | None = None) -> LengthReport:
    """Length via the coefficient-sum form ("sum_36") or the work form ("sum_35").

    sum_36: sqrt(RT) * sum_k k * int X_k v**-k / sqrt(S) dv.
    sum_35: n/sqrt(RT) * [W(v2)/sqrt(S(v2)) - int W xi' dv]
            - sqrt(RT) * sum_{k<n} (n-k) * int X_k v**-k / sqrt(S) dv,
    with W(v) the work from v1 to v, so the lower boundary term is zero.
    """
    _require_virial(eos)
    if form not in ("sum_35", "sum_36"):
        raise ValueError(f"unknown form {form!r}")
    lo, hi, orientation = _ordered(v1, v2)
    if lo == hi:
        return _empty(eos, T, lo, THEOREM)
    require_stable(eos, T, lo, hi)
    n = eos.order
    RT = eos.gas_constant * T
    sRT = math.sqrt(RT)
    terms: dict[str, float] = {}
    errs = []
    if form == "sum_36":
        for k in range(1, n + 1):
            val, err = coefficient_integral(eos, k, lo, hi, cfg)
            terms[f"term_{k}"] = sRT * k * val
            errs.append(sRT * k * err)
    else:
        w_total = eos.work(T, lo, hi)
        terms["boundary"] = n / sRT * w_total / math.sqrt(eos.stiffness(hi))
        if n > 1:
            val, err = integrate(lambda v: eos.work(T, lo, v) * dxi_dv(eos, v), lo, hi, cfg)
            terms["by_parts"] = -n / sRT * val
            errs.append(n / sRT * err)
        for k in range(1, n):
            val, err = coefficient_integral(eos, k, lo, hi, cfg)
            terms[f"coef_{k}"] = -sRT * (n - k) * val
            errs.append(sRT * (n - k) * err)
    value = math.fsum(terms.values())
    return LengthReport(value, THEOREM, math.fsum(errs), eos.work(T, lo, hi),
                        terms, orientation)


# -- general paths ----------------------------------------------------------

@dataclass(frozen=True)
class PathSpec:
    T_of_xi: Callable[[float], float]
    v_of_xi: Callable[[float], float]
    dT_dxi: Callable[[float], float]
    dv_dxi: Callable[[float], float]
    xi_i: float = 0.0
    xi_f: float = 1.0

    @classmethod
    def isotherm(cls, T, v1, v2):
        return cls(lambda x: T, lambda x: v1 + x * (v2 - v1),
                   lambda x: 0.0, lambda x: v2 - v1)

    @classmethod
    def isochore(cls, v, T1, T2):
        return cls(lambda x: T1 + x * (T2 - T1), lambda x: v,
                   lambda x: T2 - T1, lambda x: 0.0)

    @classmethod
    def straight(cls, T1, v1, T2, v2):
        return cls(lambda x: T1 + x * (T2 - T1), lambda x: v1 + x * (v2 - v1),
                   lambda x: T2 - T1, lambda x: v2 - v1)


@dataclass(frozen=True)
class PathSegment:
    xi_a: float
    xi_b: float
    character: Character
    magnitude: float
    err_estimate: float = 0.0
    residual: float = field(default=0.0)


def line_element(response: ResponseProvider, path: PathSpec, xi):
    """(q, scale) of the squared line element at parameter xi."""
    T = path.T_of_xi(xi)
    v = path.v_of_xi(xi)
    r = response(T, v)
    tdot = path.dT_dxi(xi)
    vdot = path.dv_dxi(xi)
    e11 = -r.c_v / T
    e12 = -r.alpha / r.kappa_T
    e22 = 1.0 / (v * r.kappa_T)
    q = e11 * tdot * tdot + 2.0 * e12 * tdot * vdot + e22 * vdot * vdot
    scale = abs(e11) * tdot * tdot + 2.0 * abs(e12 * tdot * vdot) + abs(e22) * vdot * vdot
    return q, scale


def path_length(response: ResponseProvider, path: PathSpec,
                cfg: QuadratureConfig | None = None, tol=1e-12, samples=64,
                xi_tol=1e-12) -> list[PathSegment]:
    """Split a path into constant-character pieces and measure each one.

    Each piece carries the integral of sqrt|q|. Null pieces have zero length
    by definition; for them ``residual`` holds the integral of sqrt|q| that
    rounding leaves behind.
    """
    a, b = path.xi_i, path.xi_f
    if a == b:
        return []

    def char(xi):
        q, scale = line_element(response, path, xi)
        return character_of(q, scale, tol)

    grid = [float(x) for x in np.linspace(a, b, samples + 1)]
    chars = [char(x) for x in grid]
    cuts = [a]
    for i in range(samples):
        if chars[i] is not chars[i + 1]:
            left, right = grid[i], grid[i + 1]
            c_left = chars[i]
            while right - left > xi_tol * max(1.0, abs(right)):
                mid = 0.5 * (left + right)
                if char(mid) is c_left:
                    left = mid
                else:
                    right = mid
            cuts.append(0.5 * (left + right))
    cuts.append(b)

    pieces = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo <= 2 * xi_tol * max(1.0, abs(hi)):
            continue
        c = char(0.5 * (lo + hi))
        if pieces and pieces[-1][2] is c:
            pieces[-1] = (pieces[-1][0], hi, c)
        else:
            pieces.append((lo, hi, c))
    if pieces:
        pieces[0] = (a, pieces[0][1], pieces[0][2])
        pieces[-1] = (pieces[-1][0], b, pieces[-1][2])

    def root_abs_q(xi):
        return math.sqrt(abs(line_element(response, path, xi)[0]))

    segments = []
    for lo, hi, c in pieces:
        if c is Character.NULL_LIKE:
            # sqrt|q| is rounding noise here; adaptive refinement cannot converge on it
            edges = np.linspace(lo, hi, samples + 1)
            residual = math.fsum(gk15(root_abs_q, float(x0), float(x1))[0]
                                 for x0, x1 in zip(edges[:-1], edges[1:]))
            segments.append(PathSegment(lo, hi, c, 0.0, 0.0, residual=residual))
        else:
            val, err = integrate(root_abs_q, lo, hi, cfg)
            segments.append(PathSegment(lo, hi, c, val, err))
    return segments


def null_path(response: ResponseProvider, T0, v0, T1, branch="positive", rtol=1e-12):
    """Path following a null slope field from (T0, v0) to temperature T1.

    The volume is integrated numerically; the path derivative is taken from the
    slope field at the integrated point, so the tangent is null to rounding.
    """
    from scipy.integrate import solve_ivp

    from .eos import StatePoint
    from .metric import assemble, null_directions

    index = 1 if branch == "positive" else 0

    def slope(T, v):
        m = assemble(response(T, v), StatePoint(T, v))
        return null_directions(m)[index]

    sol = solve_ivp(lambda T, y: [slope(T, y[0])], (T0, T1), [v0],
                    rtol=rtol, atol=1e-14 * abs(v0), dense_output=True, method="DOP853")
    span = T1 - T0

    def v_of(x):
        return float(sol.sol(T0 + x * span)[0])

    return PathSpec(lambda x: T0 + x * span, v_of, lambda x: span,
                    lambda x: slope(T0 + x * span, v_of(x)) * span)
