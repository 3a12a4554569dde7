"""Shifted exponential approximation of the centrifugal term.

The barrier ``1/r^2`` is replaced by ``alpha^2 [c0 + y + y^2]`` with
``y = e^{-alpha r} / (1 - e^{-alpha r})``.  The constant ``c0`` comes from
matching value and slope of the two sides at a point ``r0`` with
``alpha r0 = gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, InvalidInput, NoConvergence
from .model import Scheme

SEARCH_BRACKET = (0.01, 5.0)
# Match point as published; used when the slope condition has no root.
PUBLISHED_GAMMA = 0.4990429999
PUBLISHED_C0 = 0.0823058167837972


def _inv_expm1(gamma: float) -> float:
    return 1.0 / math.expm1(gamma)


def slope_condition(gamma: float) -> float:
    """``gamma^3 (u + 3u^2 + 2u^3) - 2`` with ``u = 1/(e^gamma - 1)``.

    Zero when the approximation's slope equals ``-2/r0^3`` at ``alpha r0 = gamma``.
    """
    u = _inv_expm1(gamma)
    return gamma ** 3 * (u + 3 * u * u + 2 * u ** 3) - 2.0


def c0_from_gamma(gamma: float) -> float:
    """Shift constant that makes the value condition exact at ``gamma``."""
    u = _inv_expm1(gamma)
    return 1.0 / (gamma * gamma) - u - u * u


@dataclass(frozen=True)
class ShiftParameters:
    gamma_match: float
    c0: float

    def residuals(self) -> tuple[float, float]:
        """Dimensionless (value, slope) mismatch at the match point."""
        g = self.gamma_match
        u = _inv_expm1(g)
        value = g * g * (self.c0 + u + u * u) - 1.0
        return value, slope_condition(g)


def solve_shift_parameters(tolerance: float = 1e-12) -> ShiftParameters:
    """Root-solve the slope condition on ``SEARCH_BRACKET``, then derive ``c0``.

    Raises :class:`NoConvergence` when no sign change can be found, even after
    scanning the bracket on a fine logarithmic grid.
    """
    tolerance = float(tolerance)
    if not (0 < tolerance <= 1e-8):
        raise InvalidInput(f"tolerance must lie in (0, 1e-8], got {tolerance}")
    lo, hi = SEARCH_BRACKET
    grid = np.geomspace(lo, hi, 513)
    vals = np.array([slope_condition(g) for g in grid])
    flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    if flips.size == 0:
        worst = float(np.max(vals))
        raise NoConvergence(
            f"slope condition has no sign change on {SEARCH_BRACKET}; "
            f"max value {worst:.3e} (function is negative throughout)")
    i = int(flips[0])
    gamma = brentq(slope_condition, grid[i], grid[i + 1], xtol=1e-15, maxiter=200)
    if abs(slope_condition(gamma)) >= tolerance:
        raise NoConvergence(f"root polish stalled at gamma={gamma!r}")
    return ShiftParameters(gamma, c0_from_gamma(gamma))


@lru_cache(maxsize=1)
def shift_parameters() -> ShiftParameters:
    """Constants used by the shifted scheme.

    Tries the root solve first; if it fails the published match point is used
    and ``c0`` is recomputed from it.
    """
    try:
        return solve_shift_parameters()
    except NoConvergence:
        return ShiftParameters(PUBLISHED_GAMMA, c0_from_gamma(PUBLISHED_GAMMA))


def hulthen_factor(r, alpha):
    """``e^{-alpha r}/(1 - e^{-alpha r})``, stable for small and large ``alpha r``."""
    x = alpha * np.asarray(r, dtype=float)
    return np.exp(-x) / -np.expm1(-x)


def _check_r(r) -> np.ndarray:
    arr = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("r must be finite and > 0")
    return arr


def _out(arr: np.ndarray, like):
    return float(arr) if np.ndim(like) == 0 else arr


def centrifugal_exact(r):
    arr = _check_r(r)
    return _out(1.0 / (arr * arr), r)


def centrifugal_approx(r, alpha: float, scheme: Scheme = Scheme.paper()):
    """``alpha^2 [c0 + e^{ar}/(e^{ar}-1)^2]`` evaluated in the ``e^{-ar}`` form."""
    arr = _check_r(r)
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError(f"alpha must be finite and > 0, got {alpha}")
    y = hulthen_factor(arr, alpha)
    return _out(alpha * alpha * (scheme.c0 + y + y * y), r)


class ProfilePoint(NamedTuple):
    r: float
    exact: float
    approx: float
    relative_error: float


def approximation_error_profile(alpha: float, r_min: float, r_max: float,
                                samples: int,
                                scheme: Scheme = Scheme.paper()) -> list[ProfilePoint]:
    if not (0 < r_min < r_max) or not math.isfinite(r_max):
        raise DomainError(f"need 0 < r_min < r_max, got {r_min}, {r_max}")
    if int(samples) != samples or samples < 2:
        raise InvalidInput(f"samples must be an integer >= 2, got {samples}")
    r = np.linspace(r_min, r_max, int(samples))
    exact = centrifugal_exact(r)
    approx = centrifugal_approx(r, alpha, scheme)
    rel = (approx - exact) / exact
    return [ProfilePoint(*map(float, row)) for row in zip(r, exact, approx, rel)]
