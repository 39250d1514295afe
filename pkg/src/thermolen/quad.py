"""Adaptive Gauss-Kronrod (7/15 point) quadrature.

Used as the independent numerical route for every length and work integral.
Panels are refined globally (worst error estimate first); the final sum is
taken in left-to-right panel order so results are bit-reproducible.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConvergenceError

# Kronrod abscissae on [-1, 1] (positive half, centre last) and weights.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for the embedded 7-point rule at _XGK[1], _XGK[3], _XGK[5], _XGK[7].
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_EPS = 2.220446049250313e-16
_MAX_PANELS = 200_000


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_depth: int = 60

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("rel_tol and abs_tol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


def gk15(f: Callable[[float], float], a: float, b: float):
    """One Gauss-Kronrod panel: (kronrod value, |kronrod - gauss| floored at rounding)."""
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(centre)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(res_k)
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(centre - dx)
        f2 = f(centre + dx)
        res_k += _WGK[j] * (f1 + f2)
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * (f1 + f2)
    value = res_k * half
    err = abs((res_k - res_g) * half)
    floor = 50.0 * _EPS * res_abs * abs(half)
    if not math.isfinite(value):
        raise ConvergenceError(f"non-finite integrand on [{a!r}, {b!r}]")
    return value, max(err, floor), floor


def integrate(f: Callable[[float], float], a: float, b: float,
              cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """Integrate ``f`` over [a, b]; returns ``(value, err_estimate)``.

    Reversed limits give the negated integral. Errors raised by ``f`` propagate
    unchanged. Raises ConvergenceError when a panel would have to be split past
    ``cfg.max_depth`` levels.
    """
    cfg = cfg or DEFAULT_CONFIG
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, err = integrate(f, b, a, cfg)
        return -value, err

    val, err, floor = gk15(f, a, b)
    # heap entries: (-err, left, right, depth, value, err, floor)
    heap = [(-err, a, b, 0, val, err, floor)]
    total = val
    total_err = err
    while True:
        target = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= target:
            break
        neg_err, left, right, depth, pval, perr, pfloor = heap[0]
        if perr <= pfloor:
            # worst panel is already at rounding level, nothing left to gain
            break
        if depth >= cfg.max_depth or len(heap) >= _MAX_PANELS:
            raise ConvergenceError(
                f"quadrature did not converge on [{a!r}, {b!r}]: "
                f"error estimate {total_err:.3e} > target {target:.3e}")
        heapq.heappop(heap)
        mid = 0.5 * (left + right)
        v1, e1, fl1 = gk15(f, left, mid)
        v2, e2, fl2 = gk15(f, mid, right)
        heapq.heappush(heap, (-e1, left, mid, depth + 1, v1, e1, fl1))
        heapq.heappush(heap, (-e2, mid, right, depth + 1, v2, e2, fl2))
        total += v1 + v2 - pval
        total_err += e1 + e2 - perr

    panels = sorted(heap, key=lambda item: item[1])
    value = math.fsum(p[4] for p in panels)
    err = math.fsum(p[5] for p in panels)
    return value, err
