"""Jacobi polynomials and normalized radial wavefunctions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, InvalidInput, NotBound
from .model import Scheme, ValidatedProblem
from .spectrum import energy_general


@dataclass(frozen=True)
class JacobiParams:
    degree: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise InvalidInput(f"degree must be a non-negative integer, got {self.degree}")
        if not (self.a > -1 and self.b > -1):
            raise InvalidInput(f"Jacobi parameters must exceed -1, got ({self.a}, {self.b})")


def _jacobi(n: int, a: float, b: float, x: np.ndarray) -> np.ndarray:
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    ab2 = a * a - b * b
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c1 = 2.0 * k * (k + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + ab2)
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return p


def jacobi_eval(params: JacobiParams, x):
    """``P_n^{(a,b)}(x)`` on ``[-1, 1]`` by the three-term recurrence in degree."""
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(np.abs(arr) > 1.0):
        raise DomainError("Jacobi argument must lie in [-1, 1]")
    out = _jacobi(params.degree, params.a, params.b, arr)
    return float(out) if arr.ndim == 0 else out


def hyp2f1_terminating(n: int, b: float, c: float, z: float) -> float:
    """``2F1(-n, b; c; z)`` summed as its finite series.

    The alternating terms cancel badly near ``z = 1`` for larger ``n``, so the
    sum is carried out exactly in rationals and rounded once.
    """
    b, c, z = Fraction(b), Fraction(c), Fraction(z)
    term, total = Fraction(1), Fraction(1)
    for k in range(n):
        term *= (k - n) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return float(total)


class HypergeometricCheck(NamedTuple):
    jacobi_value: float
    hypergeometric_value: float
    ratio: float


def hypergeometric_form_check(params: JacobiParams, z: float) -> HypergeometricCheck:
    """Compare ``P_n^{(a,b)}(1-2z)`` with ``2F1(-n, n+a+b+1; a+1; z)``.

    The ratio should be the constant ``binom(n+a, n)`` for every ``z``.
    """
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [0, 1], got {z}")
    n, a, b = params.degree, params.a, params.b
    pj = jacobi_eval(params, 1.0 - 2.0 * z)
    hf = hyp2f1_terminating(n, n + a + b + 1.0, a + 1.0, z)
    ratio = pj / hf if hf != 0.0 else math.nan
    return HypergeometricCheck(pj, hf, ratio)


def jacobi_binomial_prefactor(params: JacobiParams) -> float:
    n, a = params.degree, params.a
    return math.exp(math.lgamma(n + a + 1.0) - math.lgamma(a + 1.0) - math.lgamma(n + 1.0))


@dataclass(frozen=True)
class RadialWavefunction:
    problem: ValidatedProblem
    scheme: Scheme
    branch: str
    energy: float
    epsilon: float
    delta: float
    jacobi: JacobiParams
    norm: float
    # False for roots introduced by squaring the energy equation: the
    # assembled function is then normalizable but not a solution.
    solves_radial_equation: bool

    def log_abs_and_sign(self, r):
        r = _check_radii(r)
        a = self.problem.alpha
        d = self.problem.state.d
        z = np.exp(-a * r)
        pol = _jacobi(self.jacobi.degree, self.jacobi.a, self.jacobi.b, 1.0 - 2.0 * z)
        with np.errstate(divide="ignore"):
            log_abs = (math.log(self.norm) - 0.5 * (d - 1) * np.log(r)
                       - self.epsilon * a * r + self.delta * np.log(-np.expm1(-a * r))
                       + np.log(np.abs(pol)))
        return log_abs, np.sign(pol)

    def __call__(self, r):
        log_abs, sign = self.log_abs_and_sign(r)
        out = sign * np.exp(log_abs)
        return float(out) if np.ndim(r) == 0 else out

    def reduced(self, r):
        """``g(r) = r^{(D-1)/2} R(r)``, the function the radial equation acts on."""
        r_arr = np.asarray(r, dtype=float)
        out = self(r_arr) * r_arr ** (0.5 * (self.problem.state.d - 1))
        return float(out) if np.ndim(r) == 0 else out


def _check_radii(r) -> np.ndarray:
    arr = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("radii must be finite and > 0")
    return arr


def _unnormalized_integral(alpha, eps, delta, jp: JacobiParams) -> float:
    def integrand(r):
        z = math.exp(-alpha * r)
        pol = _jacobi(jp.degree, jp.a, jp.b, np.asarray(1.0 - 2.0 * z))
        return math.exp(-2.0 * eps * alpha * r) * (-math.expm1(-alpha * r)) ** (2 * delta) * float(pol) ** 2

    r_cut = 40.0 / (eps * alpha)
    # split so that the oscillating polynomial region gets its own pieces
    edges = np.unique(np.concatenate([np.linspace(0.0, min(r_cut, 20.0 / alpha), 9),
                                      [r_cut]]))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-12, limit=400)
        total += val
    return total


def radial_wavefunction(problem: ValidatedProblem, scheme: Scheme = Scheme.unshifted(),
                        branch: str = "plus", strict: bool = False) -> RadialWavefunction:
    """Assemble and normalize the radial function of one branch.

    Normalization uses the measure ``r^{D-1} dr``.  With ``strict=True`` a
    branch energy that does not solve the unsquared energy equation raises
    :class:`NotBound`; otherwise it is flagged in ``solves_radial_equation``.
    """
    res = energy_general(problem, scheme)
    if not res.is_real:
        raise NotBound(f"no real state: {res.violated_constraint}")
    energy = res.energy(branch)
    it = res.intermediates
    eps = it.epsilon(energy)
    if not eps > 0:
        raise NotBound(f"decay exponent {eps} is not positive (threshold state)")
    genuine = it.signed_epsilon(energy) > 0
    if strict and not genuine:
        raise NotBound("energy is a spurious root of the squared energy equation")
    jp = JacobiParams(problem.state.n, 2.0 * eps, it.beta_jacobi)
    integral = _unnormalized_integral(problem.alpha, eps, it.delta, jp)
    return RadialWavefunction(problem, scheme, branch, energy, eps, it.delta, jp,
                              1.0 / math.sqrt(integral), genuine)


def sample_wavefunction(wf: RadialWavefunction, r_values) -> list[tuple[float, float]]:
    r = _check_radii(r_values)
    return list(zip(r.tolist(), np.atleast_1d(wf(r)).tolist()))


def count_sign_changes(values) -> int:
    v = np.asarray(values, dtype=float)
    s = np.sign(v[v != 0.0])
    return int(np.count_nonzero(s[1:] != s[:-1]))
