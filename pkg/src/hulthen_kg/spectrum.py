"""Closed-form bound-state energies and their special cases.

Everything here works in natural units, so the energy scale ``Q`` of the
dimensionless couplings is simply ``alpha``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (ConstraintViolation, DomainError, InvalidInput,
                     WeakCouplingViolated)
from .model import (MassSpec, PotentialSpec, QuantumState, Scheme,
                    ValidatedProblem, make_problem, validate)

KAPPA_DISCRIMINANT = "kappa_discriminant"
REALNESS = "realness"
# Roundoff band inside which a vanishing realness radicand is treated as zero.
_REALNESS_RTOL = 1e-12


def _clamped_radicand(big: float, small: float) -> float:
    """``big - small``, snapped to 0 when the two agree to roundoff."""
    diff = big - small
    if abs(diff) <= _REALNESS_RTOL * max(abs(big), abs(small)):
        return 0.0
    return diff


class Status(enum.Enum):
    BOTH_REAL = "BothReal"
    NO_REAL_STATE = "NoRealState"


@dataclass(frozen=True)
class SpectrumIntermediates:
    q: float
    s_tilde: float
    v0: float
    m0: float
    m1: float
    n: int
    kappa: float
    xi: float
    b_factor: float
    delta: float
    beta_jacobi: float
    delta_e: float
    gamma_ang: float
    beta2: float
    beta3: float
    beta4: float

    def beta1(self, energy: float) -> float:
        s0 = self.s_tilde + self.m1
        return 2.0 * (self.m0 * s0 + energy * self.v0) / self.q ** 2

    def signed_epsilon(self, energy: float) -> float:
        """Right-hand side of the unsquared energy equation.

        Positive for a normalizable state, negative for a spurious root of
        the squared equation.
        """
        nd = self.n + self.delta
        st, v0 = self.s_tilde, self.v0
        num = 2.0 * (self.m0 * st + energy * v0) + st * st - v0 * v0
        return num / (2.0 * self.q ** 2 * nd) - nd / 2.0

    def epsilon(self, energy: float) -> float:
        """Decay exponent ``sqrt(m0^2 + dE - E^2)/alpha`` (never negative)."""
        rad = self.m0 ** 2 + self.delta_e - energy * energy
        if rad < 0:
            raise DomainError(f"energy {energy} lies above the continuum threshold")
        return math.sqrt(rad) / self.q


@dataclass(frozen=True)
class SpectrumResult:
    e_plus: float | None
    e_minus: float | None
    intermediates: SpectrumIntermediates
    status: Status
    violated_constraint: str | None = None

    @property
    def is_real(self) -> bool:
        return self.status is Status.BOTH_REAL

    def energy(self, branch: str) -> float:
        if not self.is_real:
            raise DomainError(f"no real state ({self.violated_constraint})")
        if branch in ("plus", "+"):
            return self.e_plus
        if branch in ("minus", "-"):
            return self.e_minus
        raise InvalidInput(f"branch must be 'plus' or 'minus', got {branch!r}")

    def status_label(self) -> str:
        if self.is_real:
            return self.status.value
        return f"{self.status.value}({self.violated_constraint})"


def _kappa_radicand(p: ValidatedProblem) -> float:
    st, v0, a = p.s_tilde, p.potential.v0, p.alpha
    return 4.0 * (st * st - v0 * v0) + a * a * (p.state.d + 2 * p.state.l - 2) ** 2


def intermediates(problem: ValidatedProblem, scheme: Scheme) -> SpectrumIntermediates:
    """All scheme-dependent constants of the closed form except the energy."""
    rad = _kappa_radicand(problem)
    if rad < 0:
        raise ConstraintViolation(
            KAPPA_DISCRIMINANT,
            f"4(S~^2 - V0^2) + alpha^2 (D+2l-2)^2 = {rad:.6g} < 0")
    a = problem.alpha
    v0, s0 = problem.potential.v0, problem.potential.s0
    m0, m1 = problem.mass.m0, problem.mass.m1
    st = problem.s_tilde
    n = problem.state.n
    g = problem.gamma_ang
    c0 = scheme.c0
    kappa = a * (2 * n + 1) + math.sqrt(rad)
    assert kappa > 0
    den = 4.0 * v0 * v0 + kappa * kappa
    delta_e = g * a * a * c0
    xi = (4.0 * m0 * m0 + 4.0 * delta_e) / den
    b = 1.0 - 4.0 * st * (st + 2.0 * m0) / den
    # 1 + 4(beta2 + beta3 + gamma) == rad / alpha^2
    delta = 0.5 * (1.0 + math.sqrt(rad) / a)
    return SpectrumIntermediates(
        q=a, s_tilde=st, v0=v0, m0=m0, m1=m1, n=n, kappa=kappa, xi=xi,
        b_factor=b, delta=delta, beta_jacobi=2.0 * delta - 1.0,
        delta_e=delta_e, gamma_ang=g,
        beta2=(s0 * s0 - v0 * v0) / a ** 2,
        beta3=m1 * (m1 - 2.0 * s0) / a ** 2,
        beta4=2.0 * m0 * m1 / a ** 2)


def _no_real(inter: SpectrumIntermediates, which: str) -> SpectrumResult:
    return SpectrumResult(None, None, inter, Status.NO_REAL_STATE, which)


def _pair(inter, centre: float, spread: float) -> SpectrumResult:
    return SpectrumResult(centre + spread, centre - spread, inter, Status.BOTH_REAL)


def energy_general(problem: ValidatedProblem,
                   scheme: Scheme = Scheme.unshifted()) -> SpectrumResult:
    """Particle and antiparticle energies for any dimension and state.

    Raises :class:`ConstraintViolation` when the ``kappa`` radicand is
    negative; a failed realness condition is reported in the result instead.
    """
    it = intermediates(problem, scheme)
    rad = _clamped_radicand(it.xi, it.b_factor ** 2 / 4.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.5 * it.v0 * it.b_factor, 0.5 * it.kappa * math.sqrt(rad))


class EquationResidual(NamedTuple):
    residual: float
    rhs: float

    @property
    def branch_sign(self) -> int:
        return (self.rhs > 0) - (self.rhs < 0)


def energy_equation_residual(problem: ValidatedProblem, scheme: Scheme,
                             energy: float) -> EquationResidual:
    """Squared form of the energy equation, ``rhs(E)^2 - eps(E)^2``.

    ``rhs`` is the unsquared right-hand side; its sign separates genuine
    states (positive) from roots introduced by squaring.
    """
    it = intermediates(problem, scheme)
    rhs = it.signed_epsilon(energy)
    eps2 = (it.m0 ** 2 + it.delta_e - energy * energy) / it.q ** 2
    return EquationResidual(rhs * rhs - eps2, rhs)


# --- dedicated special-case formulas ---------------------------------------

def _b_of(st: float, m0: float, den: float) -> float:
    return 1.0 - 4.0 * st * (st + 2.0 * m0) / den


def energy_1d_swave(potential: PotentialSpec, mass: MassSpec, n: int) -> SpectrumResult:
    """One-dimensional s-wave spectrum written in its own reduced form."""
    p = validate(potential, mass, QuantumState(n, 0, 1))
    it = intermediates(p, Scheme.unshifted())
    a, v0, m0, st = p.alpha, potential.v0, mass.m0, p.s_tilde
    kappa = a * (2 * n + 1) + math.sqrt(a * a + 4.0 * (st * st - v0 * v0))
    den = 4.0 * v0 * v0 + kappa * kappa
    b = _b_of(st, m0, den)
    rad = _clamped_radicand(m0 * m0 / den, b * b / 16.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.5 * v0 * b, kappa * math.sqrt(rad))


def energy_1d_vector(v0: float, alpha: float, m0: float, n: int) -> SpectrumResult:
    """One-dimensional s-wave with the modified scalar strength set to zero."""
    p = make_problem(v0, 0.0, alpha, m0, 0.0, n, 0, 1)
    it = intermediates(p, Scheme.unshifted())
    kappa = alpha * (2 * n + 1) + math.sqrt(alpha * alpha - 4.0 * v0 * v0)
    den = 4.0 * v0 * v0 + kappa * kappa
    rad = _clamped_radicand(m0 * m0 / den, 1.0 / 16.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.5 * v0, kappa * math.sqrt(rad))


def ground_state_1d_critical(alpha: float, m0: float) -> SpectrumResult:
    """Ground state of the 1D vector case at the critical strength ``v0 = alpha/2``."""
    v0 = alpha / 2.0
    p = make_problem(v0, 0.0, alpha, m0, 0.0, 0, 0, 1)
    it = intermediates(p, Scheme.unshifted())
    rad = _clamped_radicand(2.0 * m0 * m0 / (v0 * v0), 1.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.5 * v0, 0.5 * v0 * math.sqrt(rad))


def energy_pure_scalar(mass: MassSpec, alpha: float, n: int) -> SpectrumResult:
    """Pure scalar coupling (``v0 = 0``, ``s0 = m1``) in one dimension.

    The spectrum is symmetric: ``e_minus == -e_plus``.
    """
    p = validate(PotentialSpec(0.0, mass.m1, alpha), mass, QuantumState(n, 0, 1))
    it = intermediates(p, Scheme.unshifted())
    m0 = p.mass.m0
    rad = _clamped_radicand(m0 * m0, alpha * alpha * (n + 1) ** 2 / 4.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.0, math.sqrt(rad))


def _require_3d(problem: ValidatedProblem) -> None:
    if problem.state.d != 3:
        raise InvalidInput(f"three-dimensional formula needs d=3, got {problem.state.d}")


def energy_3d_mixed(problem: ValidatedProblem, scheme: Scheme) -> SpectrumResult:
    _require_3d(problem)
    it = intermediates(problem, scheme)
    a, v0, m0, st = problem.alpha, problem.potential.v0, problem.mass.m0, problem.s_tilde
    l, n = problem.state.l, problem.state.n
    kappa = a * (2 * n + 1) + math.sqrt(a * a * (2 * l + 1) ** 2 + 4.0 * (st * st - v0 * v0))
    den = 4.0 * v0 * v0 + kappa * kappa
    xi = (m0 * m0 + a * a * l * (l + 1) * scheme.c0) / den
    b = _b_of(st, m0, den)
    rad = _clamped_radicand(xi, b * b / 16.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.5 * v0 * b, kappa * math.sqrt(rad))


def energy_3d_vector(problem: ValidatedProblem, scheme: Scheme) -> SpectrumResult:
    """Three dimensions with zero modified scalar strength."""
    _require_3d(problem)
    it = intermediates(problem, scheme)
    a, v0, m0 = problem.alpha, problem.potential.v0, problem.mass.m0
    l, n = problem.state.l, problem.state.n
    eta = a * (2 * n + 1) + math.sqrt(a * a * (2 * l + 1) ** 2 - 4.0 * v0 * v0)
    xi = (m0 * m0 + a * a * l * (l + 1) * scheme.c0) / (4.0 * v0 * v0 + eta * eta)
    rad = _clamped_radicand(xi, 1.0 / 16.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.5 * v0, eta * math.sqrt(rad))


def energy_3d_swave(problem: ValidatedProblem) -> SpectrumResult:
    """Three-dimensional s-wave; no centrifugal term, so no scheme."""
    _require_3d(problem)
    if problem.state.l != 0:
        raise InvalidInput("s-wave formula needs l=0")
    it = intermediates(problem, Scheme.unshifted())
    a, v0, m0, st = problem.alpha, problem.potential.v0, problem.mass.m0, problem.s_tilde
    n = problem.state.n
    sigma = a * (2 * n + 1) + math.sqrt(a * a + 4.0 * (st * st - v0 * v0))
    den = 4.0 * v0 * v0 + sigma * sigma
    b = _b_of(st, m0, den)
    rad = _clamped_radicand(m0 * m0 / den, b * b / 16.0)
    if rad < 0:
        return _no_real(it, REALNESS)
    return _pair(it, 0.5 * v0 * b, sigma * math.sqrt(rad))


def energy_3d(problem: ValidatedProblem,
              scheme: Scheme = Scheme.unshifted()) -> SpectrumResult:
    _require_3d(problem)
    if problem.state.l == 0:
        return energy_3d_swave(problem)
    if problem.s_tilde == 0.0:
        return energy_3d_vector(problem, scheme)
    return energy_3d_mixed(problem, scheme)


def _require_equal_coupling(problem: ValidatedProblem) -> None:
    v0, s0 = problem.potential.v0, problem.potential.s0
    if not math.isclose(v0, s0, rel_tol=1e-12, abs_tol=1e-15):
        raise InvalidInput(f"equal-coupling formula needs s0 == v0, got {s0} vs {v0}")


def _equal_coupling_delta(problem: ValidatedProblem) -> float:
    a, v0, m1 = problem.alpha, problem.potential.v0, problem.mass.m1
    k = problem.state.d + 2 * problem.state.l - 2
    rad = a * a * k * k + 4.0 * m1 * m1 - 8.0 * v0 * m1
    if rad < 0:
        raise DomainError(f"delta radicand {rad:.6g} < 0")
    return 0.5 * (1.0 + math.sqrt(rad) / a)


def energy_equal_scalar_vector_residual(problem: ValidatedProblem, scheme: Scheme,
                                        energy: float) -> float:
    """Squared residual of the ``s0 == v0`` energy equation, in energy^2 units."""
    _require_equal_coupling(problem)
    a, v0, m0, m1 = problem.alpha, problem.potential.v0, problem.mass.m0, problem.mass.m1
    r0 = 1.0 / a
    nd = problem.state.n + _equal_coupling_delta(problem)
    rhs = ((2 * r0 * v0 * (m0 + energy - m1) + r0 * (m1 - 2 * m0) * m1) / (2 * nd)
           - nd / (2 * r0))
    lhs2 = m0 * m0 + problem.gamma_ang * scheme.c0 / r0 ** 2 - energy * energy
    return rhs * rhs - lhs2


def energy_nonrelativistic(problem: ValidatedProblem,
                           scheme: Scheme = Scheme.unshifted()) -> float:
    """Nonrelativistic limit for equal scalar and vector couplings.

    This is the Schrodinger energy in the doubled potential ``2V(r)``.
    """
    _require_equal_coupling(problem)
    a, v0, m0, m1 = problem.alpha, problem.potential.v0, problem.mass.m0, problem.mass.m1
    d, l = problem.state.d, problem.state.l
    nd = problem.state.n + _equal_coupling_delta(problem)
    shift = a * a * (d + 2 * l - 1) * (d + 2 * l - 3) * scheme.c0 / (8.0 * m0)
    core = ((2 * v0 - m1) * (2 * m0 - m1) - a * a * nd * nd) / nd
    return shift - core * core / (8.0 * m0 * a * a)


def weak_coupling_ratios(problem: ValidatedProblem) -> tuple[float, float]:
    """``(n+delta)/(m0 r0)`` and ``v0 r0/(n+delta)``; both must be small."""
    nd = problem.state.n + _equal_coupling_delta(problem)
    a = problem.alpha
    return nd * a / problem.mass.m0, problem.potential.v0 / (a * nd)


def energy_relativistic_expansion(problem: ValidatedProblem,
                                  scheme: Scheme = Scheme.unshifted(),
                                  threshold: float = 0.01) -> float:
    """Weak-coupling expansion: rest mass + nonrelativistic energy + quartic term.

    ``threshold`` bounds the squares of both coupling ratios.
    """
    _require_equal_coupling(problem)
    r1, r2 = weak_coupling_ratios(problem)
    # compare unsquared so that a ratio of exactly 0.1 passes a 0.01 threshold
    limit = math.sqrt(threshold)
    if abs(r1) > limit or abs(r2) > limit:
        raise WeakCouplingViolated(
            f"coupling ratios ({r1:.4g}, {r2:.4g}) exceed sqrt({threshold})")
    a, v0, m0, m1 = problem.alpha, problem.potential.v0, problem.mass.m0, problem.mass.m1
    nd = problem.state.n + _equal_coupling_delta(problem)
    quartic = 2.0 * (2 * m0 - m1) * ((2 * v0 - m1) / (2 * a * nd)) ** 4
    return energy_nonrelativistic(problem, scheme) + m0 + quartic


class BoundState(NamedTuple):
    n: int
    l: int
    result: SpectrumResult


def enumerate_bound_states(potential: PotentialSpec, mass: MassSpec, d: int = 3,
                           scheme: Scheme = Scheme.unshifted(), n_start: int = 1,
                           n_max: int = 64, l_max: int = 64) -> list[BoundState]:
    """All ``(n, l)`` cells in the scan window with two real energies."""
    if n_start not in (0, 1):
        raise InvalidInput(f"n_start must be 0 or 1, got {n_start}")
    if n_max < n_start or l_max < 0:
        raise InvalidInput("empty scan window")
    out = []
    for n in range(n_start, n_max + 1):
        for l in range(l_max + 1):
            p = validate(potential, mass, QuantumState(n, l, d))
            try:
                res = energy_general(p, scheme)
            except ConstraintViolation:
                continue
            if res.is_real:
                out.append(BoundState(n, l, res))
    return out
