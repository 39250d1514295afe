"""Response functions (c_v, c_p, alpha, kappa_T): the only input the metric needs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .eos import StatePoint, VirialEos
from .errors import ConfigError, StabilityError


@dataclass(frozen=True)
class ResponseSet:
    c_v: float
    c_p: float
    alpha: float
    kappa_T: float

    def __post_init__(self):
        for name in ("c_v", "c_p", "alpha", "kappa_T"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.kappa_T == 0:
            raise ValueError("kappa_T must be non-zero")

    @classmethod
    def from_mayer(cls, c_v, alpha, kappa_T, T, v):
        """Build with c_p = c_v + v T alpha**2 / kappa_T."""
        return cls(c_v=c_v, c_p=c_v + v * T * alpha * alpha / kappa_T,
                   alpha=alpha, kappa_T=kappa_T)

    def mayer_residual(self, T, v):
        """c_p - c_v - v T alpha**2 / kappa_T (zero for a consistent set)."""
        return self.c_p - self.c_v - v * T * self.alpha ** 2 / self.kappa_T

    def is_stable(self) -> bool:
        return self.kappa_T > 0 and self.c_v > 0 and self.c_p > 0


@dataclass(frozen=True)
class CvModel:
    """Heat capacity at constant volume.

    kind="constant": parameters () -> 3R/2, or (c,) -> c.
    kind="linear":   parameters (a, b) -> a + b*T.
    """

    kind: str = "constant"
    parameters: tuple[float, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(float(p) for p in self.parameters))
        if self.kind == "constant":
            if len(self.parameters) > 1:
                raise ConfigError("constant c_v model takes at most one parameter")
        elif self.kind == "linear":
            if len(self.parameters) != 2:
                raise ConfigError("linear c_v model takes exactly two parameters (a, b)")
        elif self.kind == "ideal_plus_virial":
            raise ConfigError(
                "c_v model 'ideal_plus_virial' is not implemented; use 'constant' or 'linear'")
        else:
            raise ConfigError(f"unknown c_v model kind {self.kind!r}")

    def __call__(self, T, v, gas_constant):
        if self.kind == "constant":
            return self.parameters[0] if self.parameters else 1.5 * gas_constant
        a, b = self.parameters
        return a + b * T


def from_eos(eos: VirialEos, state: StatePoint, cv_model: CvModel | None = None) -> ResponseSet:
    """Response functions of a virial (or quasi-ideal) gas at ``state``."""
    cv_model = cv_model or CvModel()
    T, v = state.T, state.v
    dpdv = eos.dp_dv(T, v)
    if not dpdv < 0:
        raise StabilityError(f"(dp/dv)_T = {dpdv!r} >= 0 at T={T!r}, v={v!r}",
                             interval=(v, v))
    dpdT = eos.dp_dT(T, v)
    kappa = -1.0 / (v * dpdv)
    alpha = -dpdT / (v * dpdv)
    c_v = cv_model(T, v, eos.gas_constant)
    return ResponseSet.from_mayer(c_v, alpha, kappa, T, v)


ResponseProvider = Callable[[float, float], ResponseSet]


def eos_response(eos: VirialEos, cv_model: CvModel | None = None) -> ResponseProvider:
    """Callable ``(T, v) -> ResponseSet`` backed by ``eos``."""
    cv_model = cv_model or CvModel()

    def provider(T, v):
        return from_eos(eos, StatePoint(T, v), cv_model)

    return provider
