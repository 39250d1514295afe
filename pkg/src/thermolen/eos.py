"""Virial equation of state truncated at order n, plus the excluded-volume gas.

    p = RT/v * (1 + B/v + C/v**2 + ... + Z/v**(n-1))      (virial)
    p = RT/(v - b)                                          (quasi-ideal)

Coefficients are constants at the working temperature. Their temperature
derivatives are optional and only read by :mod:`thermolen.response`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, StabilityError

R_DEFAULT = 8.314
MAX_ORDER = 8


@dataclass(frozen=True)
class StatePoint:
    T: float
    v: float

    def __post_init__(self):
        if not (self.T > 0 and math.isfinite(self.T)):
            raise DomainError(f"temperature must be positive and finite, got {self.T!r}")
        if not (self.v > 0 and math.isfinite(self.v)):
            raise DomainError(f"molar volume must be positive and finite, got {self.v!r}")


@dataclass(frozen=True)
class VirialEos:
    """Truncated virial expansion (or quasi-ideal gas when ``excluded_volume`` is set).

    ``coefficients[k]`` multiplies ``RT / v**(k + 2)``, i.e. the list is
    ``(B, C, D, ...)`` and ``order == len(coefficients) + 1``.
    """

    gas_constant: float = R_DEFAULT
    order: int = 1
    coefficients: tuple[float, ...] = ()
    excluded_volume: float | None = None
    coeff_dT: tuple[float, ...] | None = None
    coeff_d2T: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        for name in ("coeff_dT", "coeff_d2T"):
            val = getattr(self, name)
            if val is not None:
                val = tuple(float(c) for c in val)
                object.__setattr__(self, name, val)
                if len(val) != len(self.coefficients):
                    raise ConfigError(f"{name} must have one entry per coefficient")
        if not (self.gas_constant > 0 and math.isfinite(self.gas_constant)):
            raise ConfigError("gas_constant must be positive")
        if not 1 <= self.order <= MAX_ORDER:
            raise ConfigError(f"order must be between 1 and {MAX_ORDER}, got {self.order}")
        if len(self.coefficients) != self.order - 1:
            raise ConfigError(
                f"order {self.order} needs {self.order - 1} coefficients, "
                f"got {len(self.coefficients)}")
        if not all(math.isfinite(c) for c in self.coefficients):
            raise ConfigError("coefficients must be finite")
        if self.excluded_volume is not None:
            if not (self.excluded_volume >= 0 and math.isfinite(self.excluded_volume)):
                raise ConfigError("excluded_volume must be non-negative")
            if self.order != 1:
                raise ConfigError("excluded_volume requires order 1 with no coefficients")

    @classmethod
    def ideal(cls, gas_constant=R_DEFAULT):
        return cls(gas_constant=gas_constant)

    @classmethod
    def quasi_ideal(cls, excluded_volume, gas_constant=R_DEFAULT):
        return cls(gas_constant=gas_constant, excluded_volume=excluded_volume)

    @classmethod
    def virial(cls, coefficients, gas_constant=R_DEFAULT, coeff_dT=None, coeff_d2T=None):
        coefficients = tuple(coefficients)
        return cls(gas_constant=gas_constant, order=len(coefficients) + 1,
                   coefficients=coefficients, coeff_dT=coeff_dT, coeff_d2T=coeff_d2T)

    @property
    def is_quasi_ideal(self) -> bool:
        return self.excluded_volume is not None

    @property
    def series(self) -> tuple[float, ...]:
        """Expansion coefficients with the leading 1: (1, B, C, ...)."""
        return (1.0,) + self.coefficients

    # -- domain -----------------------------------------------------------

    def check_state(self, T, v):
        StatePoint(T, v)
        if self.is_quasi_ideal and not v > self.excluded_volume:
            raise DomainError(
                f"molar volume {v!r} must exceed the excluded volume {self.excluded_volume!r}")

    # -- series helpers ---------------------------------------------------

    def _inverse_series(self, v, weights):
        # sum_k weights[k] * coefficients[k] / v**(k+1), Horner form
        acc = 0.0
        for c, w in zip(reversed(self.coefficients), reversed(weights)):
            acc = (acc + w * c) / v
        return acc

    def compressibility_factor(self, v):
        """1 + B/v + C/v**2 + ... (pv/RT for the virial form)."""
        return 1.0 + self._inverse_series(v, [1] * len(self.coefficients))

    def stiffness(self, v):
        """Dimensionless 1 + 2B/v + 3C/v**2 + ...; equals -(dp/dv)_T * v**2 / RT."""
        if self.is_quasi_ideal:
            return (v / (v - self.excluded_volume)) ** 2
        return 1.0 + self._inverse_series(v, range(2, self.order + 1))

    # -- operations -------------------------------------------------------

    def pressure(self, T, v):
        self.check_state(T, v)
        RT = self.gas_constant * T
        if self.is_quasi_ideal:
            return RT / (v - self.excluded_volume)
        return (RT / v) * self.compressibility_factor(v)

    def dp_dv(self, T, v):
        """(dp/dv)_T by exact term-by-term differentiation."""
        self.check_state(T, v)
        RT = self.gas_constant * T
        if self.is_quasi_ideal:
            d = v - self.excluded_volume
            return -RT / (d * d)
        return -(RT / (v * v)) * self.stiffness(v)

    def dp_dT(self, T, v):
        """(dp/dT)_v including the temperature derivatives of the coefficients."""
        self.check_state(T, v)
        R = self.gas_constant
        if self.is_quasi_ideal:
            return R / (v - self.excluded_volume)
        if self.coefficients and self.coeff_dT is None:
            raise ConfigError("(dp/dT)_v needs coeff_dT for every virial coefficient")
        z = self.compressibility_factor(v)
        if not self.coefficients:
            return (R / v) * z
        acc = 0.0
        for c in reversed(self.coeff_dT):
            acc = (acc + c) / v
        return (R / v) * z + (R * T / v) * acc

    def isotherm_integrand(self, T, v):
        """sqrt(-(dp/dv)_T); the line element of the isothermal length."""
        return math.sqrt(-self.dp_dv(T, v))

    def work(self, T, v1, v2):
        """Isothermal work integral of p dv from v1 to v2 (closed-form antiderivative)."""
        if v1 == v2:
            self.check_state(T, v1)
            return 0.0
        if v1 > v2:
            return -self.work(T, v2, v1)
        self.check_state(T, v1)
        self.check_state(T, v2)
        RT = self.gas_constant * T
        if self.is_quasi_ideal:
            b = self.excluded_volume
            return RT * math.log((v2 - b) / (v1 - b))
        total = math.log(v2 / v1)
        for k, c in enumerate(self.coefficients, start=2):
            if k == 2:
                total += c * ((v2 - v1) / (v1 * v2))
            else:
                total += c / (k - 1) * (v1 ** (1 - k) - v2 ** (1 - k))
        return RT * total

    def helmholtz_relative(self, T, v_ref, v):
        """f(T, v) - f(T, v_ref); the temperature-only constant drops out."""
        return -self.work(T, v_ref, v)

    # -- stability --------------------------------------------------------

    def unstable_interval(self, T, v1, v2, samples=256):
        """Bracket of the first volume in [v1, v2] where (dp/dv)_T >= 0, or None.

        Uses uniform sampling with bisection on the first sign change, backed by
        the real roots of v**(n-1) * stiffness(v) so that a pair of crossings
        falling between two samples is not missed.
        """
        lo, hi = min(v1, v2), max(v1, v2)
        self.check_state(T, lo)
        self.check_state(T, hi)
        if self.is_quasi_ideal or self.order == 1:
            return None

        def bad(v):
            return self.stiffness(v) <= 0.0

        grid = np.linspace(lo, hi, samples + 1)
        prev = lo
        if bad(lo):
            # report the unstable stretch from lo up to where stability resumes
            for v in grid[1:]:
                v = float(v)
                if not bad(v):
                    return (lo, _bisect_bracket(lambda x: not bad(x), prev, v)[1])
                prev = v
            return (lo, hi)
        for v in grid[1:]:
            v = float(v)
            if bad(v):
                return _bisect_bracket(bad, prev, v)
            prev = v
        # polynomial v**(n-1) + 2B v**(n-2) + 3C v**(n-3) + ...
        poly = [k * c for k, c in enumerate(self.series, start=1)]
        for root in sorted(np.roots(poly)):
            if abs(root.imag) <= 1e-12 * max(1.0, abs(root.real)) and lo < root.real < hi:
                r = float(root.real)
                width = 1e-9 * r
                return (max(lo, r - width), min(hi, r + width))
        return None


def _bisect_bracket(bad, good_v, bad_v, rel=1e-12):
    while abs(bad_v - good_v) > rel * abs(bad_v):
        mid = 0.5 * (good_v + bad_v)
        if bad(mid):
            bad_v = mid
        else:
            good_v = mid
    return (min(good_v, bad_v), max(good_v, bad_v))


def require_stable(eos: VirialEos, T, v1, v2):
    bracket = eos.unstable_interval(T, v1, v2)
    if bracket is not None:
        raise StabilityError(
            f"(dp/dv)_T >= 0 inside [{v1!r}, {v2!r}] at T={T!r}; "
            f"violation bracketed by [{bracket[0]!r}, {bracket[1]!r}]",
            interval=bracket)
