"""Shooting-method eigenvalue solver for the radial equation.

The radial equation ``g'' = -k^2(r, E) g`` is integrated with Numerov's
method on a logarithmic grid ``x = ln r`` using ``u = g / sqrt(r)``, which
turns it into ``u'' = (1/4 - r^2 k^2) u``.  Outward and inward solutions are
matched at the outer classical turning point; the scaled Wronskian there is
a continuous function of ``E`` that vanishes exactly at eigenvalues.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

import numba
import numpy as np
from scipy.optimize import brentq

from .errors import (ConstraintViolation, DomainError, IntegrationBlowup,
                     InvalidInput, NotFoundInBracket)
from .model import Scheme, ValidatedProblem
from .shift import hulthen_factor
from .spectrum import KAPPA_DISCRIMINANT, energy_general, energy_nonrelativistic

_RESCALE = 1e250
# decay lengths kept beyond the turning point
_TAIL_DECAY = 35.0


class OracleMode(enum.Enum):
    APPROXIMATED = "approximated"
    EXACT = "exact"
    NONREL_EXACT = "nonrel-exact"
    NONREL_APPROXIMATED = "nonrel-approximated"

    @property
    def relativistic(self) -> bool:
        return self in (OracleMode.APPROXIMATED, OracleMode.EXACT)

    @property
    def approximated(self) -> bool:
        return self in (OracleMode.APPROXIMATED, OracleMode.NONREL_APPROXIMATED)


@dataclass(frozen=True)
class OracleConfig:
    """Shooting settings.

    ``r_min`` defaults to ``1e-6/alpha``.  When ``r_max`` is None the outer
    edge is placed 35 decay lengths beyond the outer turning point, which
    keeps the logarithmic step small for deeply bound states.
    """

    mode: OracleMode = OracleMode.APPROXIMATED
    scheme: Scheme = field(default_factory=Scheme.unshifted)
    r_min: float | None = None
    r_max: float | None = None
    grid_points: int = 20001
    e_bracket: tuple[float, float] | None = None
    e_tolerance: float = 1e-10
    scan_points: int = 200

    def __post_init__(self):
        if self.grid_points < 1001:
            raise InvalidInput(f"grid_points must be >= 1001, got {self.grid_points}")
        if not self.e_tolerance > 0:
            raise InvalidInput("e_tolerance must be > 0")
        if self.scan_points < 2:
            raise InvalidInput("scan_points must be >= 2")
        if self.r_min is not None and self.r_min <= 0:
            raise InvalidInput("r_min must be > 0")
        if (self.r_min is not None and self.r_max is not None
                and not self.r_min < self.r_max):
            raise InvalidInput("r_min must be < r_max")
        if self.e_bracket is not None and not self.e_bracket[0] < self.e_bracket[1]:
            raise InvalidInput(f"bad energy bracket {self.e_bracket}")

    def c0(self) -> float:
        return self.scheme.c0 if self.mode.approximated else 0.0


class OracleEigenvalue(NamedTuple):
    energy: float
    node_count: int
    matching_residual: float
    converged: bool


class ShootResult(NamedTuple):
    mismatch: float
    node_count: int
    matching_radius: float


@numba.njit(cache=True)
def _numerov(q, h, u_start, u_next, forward):
    n = q.size
    u = np.empty(n)
    t = h * h / 12.0
    if forward:
        u[0] = u_start
        u[1] = u_next
        for i in range(1, n - 1):
            u[i + 1] = ((2.0 + 10.0 * t * q[i]) * u[i]
                        - (1.0 - t * q[i - 1]) * u[i - 1]) / (1.0 - t * q[i + 1])
            if abs(u[i + 1]) > _RESCALE:
                for j in range(i + 2):
                    u[j] /= _RESCALE
    else:
        u[n - 1] = u_start
        u[n - 2] = u_next
        for i in range(n - 2, 0, -1):
            u[i - 1] = ((2.0 + 10.0 * t * q[i]) * u[i]
                        - (1.0 - t * q[i + 1]) * u[i + 1]) / (1.0 - t * q[i - 1])
            if abs(u[i - 1]) > _RESCALE:
                for j in range(i - 1, n):
                    u[j] /= _RESCALE
    return u


def _k2(r: np.ndarray, energy: float, problem: ValidatedProblem,
        mode: OracleMode, c0: float) -> np.ndarray:
    a = problem.alpha
    v0 = problem.potential.v0
    y = hulthen_factor(r, a)
    if mode.relativistic:
        m0, st = problem.mass.m0, problem.s_tilde
        base = (energy + v0 * y) ** 2 - (m0 - st * y) ** 2
    else:
        base = 2.0 * problem.mass.m0 * (energy + 2.0 * v0 * y)
    if mode.approximated:
        barrier = a * a * (c0 + y + y * y)
    else:
        barrier = 1.0 / (r * r)
    return base - problem.gamma_ang * barrier


def effective_wavenumber_sq(r, energy: float, problem: ValidatedProblem,
                            config: OracleConfig):
    """Local ``k^2(r, E)`` of the radial equation in the configured mode.

    The nonrelativistic modes use the Schrodinger coefficient for the
    doubled potential ``2V(r)``; they ignore the scalar strength and ``m1``.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("r must be finite and > 0")
    out = _k2(arr, float(energy), problem, config.mode, config.c0())
    return float(out) if arr.ndim == 0 else out


def _indicial(problem: ValidatedProblem, energy: float, mode: OracleMode):
    """Leading exponent ``s`` of ``g ~ r^s`` and first series coefficient."""
    a, g = problem.alpha, problem.gamma_ang
    v0 = problem.potential.v0
    if mode.relativistic:
        st, m0 = problem.s_tilde, problem.mass.m0
        rad = 1.0 + 4.0 * g + 4.0 * (st * st - v0 * v0) / (a * a)
        if rad < 0:
            raise ConstraintViolation(KAPPA_DISCRIMINANT,
                                      "potential too singular at the origin")
        s = 0.5 * (1.0 + math.sqrt(rad))
        linear = (2.0 * (energy * v0 + m0 * st) - (v0 * v0 - st * st)) / a
    else:
        s = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * g))
        linear = 4.0 * problem.mass.m0 * v0 / a
    # neither barrier form has a 1/r term, so only the potentials feed c1
    return s, -linear / (2.0 * s)


def _decay_sq(problem: ValidatedProblem, energy: float, mode: OracleMode, c0: float) -> float:
    shift = problem.gamma_ang * problem.alpha ** 2 * c0 if mode.approximated else 0.0
    if mode.relativistic:
        return problem.mass.m0 ** 2 - energy * energy + shift
    return -2.0 * problem.mass.m0 * energy + shift


def continuum_threshold(problem: ValidatedProblem, config: OracleConfig) -> tuple[float, float]:
    """Energy window below the continuum, ``(lower, upper)``."""
    shift = problem.gamma_ang * problem.alpha ** 2 * config.c0()
    if config.mode.relativistic:
        m_eff = math.sqrt(problem.mass.m0 ** 2 + shift)
        return -m_eff, m_eff
    m0, v0, a = problem.mass.m0, problem.potential.v0, problem.alpha
    lower = -max(4.0 * m0 * v0 * v0 / (a * a), 1.0) * 1.05
    return lower, shift / (2.0 * m0)


def _turning_point(problem, energy, mode, c0, r_min) -> float:
    rr = np.geomspace(r_min, 1e4 / problem.alpha, 4000)
    kk = _k2(rr, energy, problem, mode, c0)
    allowed = np.nonzero(kk > 0)[0]
    return float(rr[allowed[-1]] if allowed.size else rr[np.argmax(kk)])


def shoot(problem: ValidatedProblem, config: OracleConfig, energy: float) -> ShootResult:
    """Integrate both ways at ``energy`` and return the scaled mismatch.

    The mismatch is the discrete Wronskian of the max-normalized outward and
    inward solutions at the matching radius; the node count is taken from
    the joined solution.
    """
    mode, c0 = config.mode, config.c0()
    kinf2 = _decay_sq(problem, energy, mode, c0)
    if not kinf2 > 0:
        raise DomainError(f"energy {energy} is not below the continuum threshold")
    kinf = math.sqrt(kinf2)
    s, c1 = _indicial(problem, energy, mode)
    r_min = config.r_min if config.r_min is not None else 1e-6 / problem.alpha
    r_turn = _turning_point(problem, energy, mode, c0, r_min)
    r_max = config.r_max if config.r_max is not None else r_turn + _TAIL_DECAY / kinf
    if not r_max > r_min:
        raise InvalidInput("r_max must exceed r_min")
    n = config.grid_points
    x = np.linspace(math.log(r_min), math.log(r_max), n)
    h = x[1] - x[0]
    r = np.exp(x)
    q = 0.25 - r * r * _k2(r, energy, problem, mode, c0)
    m = min(max(int(np.searchsorted(r, r_turn)), 2), n - 3)

    out_ratio = (r[1] / r[0]) ** (s - 0.5) * (1.0 + c1 * r[1]) / (1.0 + c1 * r[0])
    u_out = _numerov(q[:m + 2], h, 1.0, out_ratio, True)
    in_ratio = math.exp(-kinf * (r[-2] - r[-1])) * math.sqrt(r[-1] / r[-2])
    u_in = _numerov(q[m:], h, 1.0, in_ratio, False)
    if not (np.all(np.isfinite(u_out)) and np.all(np.isfinite(u_in))):
        raise IntegrationBlowup(f"non-finite solution at E={energy}")
    u_out = u_out / np.abs(u_out).max()
    u_in = u_in / np.abs(u_in).max()

    t = h * h / 12.0
    w_out = (1.0 - t * q[m:m + 2]) * u_out[m:m + 2]
    w_in = (1.0 - t * q[m:m + 2]) * u_in[:2]
    mismatch = (w_out[0] * w_in[1] - w_out[1] * w_in[0]) / h

    if u_in[0] != 0.0:
        joined = np.concatenate([u_out[:m + 1], u_in[1:] * (u_out[m] / u_in[0])])
    else:
        joined = u_out[:m + 1]
    big = np.abs(joined).max()
    signs = np.sign(joined[np.abs(joined) > 1e-12 * big])
    nodes = int(np.count_nonzero(signs[1:] != signs[:-1]))
    return ShootResult(float(mismatch), nodes, float(r[m]))


def outward_node_count(problem: ValidatedProblem, config: OracleConfig, energy: float) -> int:
    """Zeros of the regular solution integrated outward over the whole grid.

    Unlike the matched count this grows by one each time ``energy`` passes an
    eigenvalue (for states where ``k^2`` increases with energy).
    """
    mode, c0 = config.mode, config.c0()
    kinf2 = _decay_sq(problem, energy, mode, c0)
    if not kinf2 > 0:
        raise DomainError(f"energy {energy} is not below the continuum threshold")
    s, c1 = _indicial(problem, energy, mode)
    r_min = config.r_min if config.r_min is not None else 1e-6 / problem.alpha
    r_turn = _turning_point(problem, energy, mode, c0, r_min)
    r_max = config.r_max if config.r_max is not None else r_turn + _TAIL_DECAY / math.sqrt(kinf2)
    x = np.linspace(math.log(r_min), math.log(r_max), config.grid_points)
    r = np.exp(x)
    q = 0.25 - r * r * _k2(r, energy, problem, mode, c0)
    ratio = (r[1] / r[0]) ** (s - 0.5) * (1.0 + c1 * r[1]) / (1.0 + c1 * r[0])
    u = _numerov(q, x[1] - x[0], 1.0, ratio, True)
    signs = np.sign(u[u != 0.0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _bracket(problem: ValidatedProblem, config: OracleConfig) -> tuple[float, float]:
    lo, hi = continuum_threshold(problem, config)
    if config.e_bracket is None:
        return lo + 1e-6, hi - 1e-6
    blo, bhi = config.e_bracket
    return max(blo, lo + 1e-12), min(bhi, hi - 1e-12)


def seeded_bracket(problem: ValidatedProblem, config: OracleConfig,
                   energy: float, margin: float = 0.2) -> tuple[float, float]:
    """Window around a closed-form energy, clipped to the bound-state range."""
    lo, hi = continuum_threshold(problem, config)
    width = margin * (problem.mass.m0 if config.mode.relativistic else max(abs(energy), 1e-3))
    return max(lo + 1e-9, energy - width), min(hi - 1e-9, energy + width)


def _polish(problem, config, lo, hi) -> OracleEigenvalue:
    def f(e):
        return shoot(problem, config, e).mismatch

    tol = config.e_tolerance
    root = brentq(f, lo, hi, xtol=tol * 1e-2, maxiter=200)
    res = shoot(problem, config, root)
    step = max(tol, 1e-9 * max(1.0, abs(root)))
    e_lo, e_hi = max(lo, root - step), min(hi, root + step)
    slope = (f(e_hi) - f(e_lo)) / (e_hi - e_lo) if e_hi > e_lo else 0.0
    resid = abs(res.mismatch / slope) if slope != 0.0 else math.inf
    return OracleEigenvalue(root, res.node_count, resid, resid < tol)


def find_eigenvalues(problem: ValidatedProblem, config: OracleConfig) -> list[OracleEigenvalue]:
    """Every eigenvalue whose mismatch changes sign between scan points."""
    lo, hi = _bracket(problem, config)
    if not lo < hi:
        return []
    grid = np.linspace(lo, hi, config.scan_points)
    values = [shoot(problem, config, e).mismatch for e in grid]
    found = []
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            found.append(_polish(problem, config, grid[i], grid[i] + 1e-3 * (grid[1] - grid[0])))
        elif values[i] * values[i + 1] < 0:
            found.append(_polish(problem, config, grid[i], grid[i + 1]))
    return found


def find_eigenvalue(problem: ValidatedProblem, config: OracleConfig,
                    target_nodes: int) -> OracleEigenvalue:
    """Eigenvalue whose wavefunction has ``target_nodes`` interior nodes.

    When several roots in the bracket carry that node count the one closest
    to the bracket centre wins.
    """
    if target_nodes < 0:
        raise InvalidInput("target_nodes must be >= 0")
    hits = [ev for ev in find_eigenvalues(problem, config) if ev.node_count == target_nodes]
    if not hits:
        raise NotFoundInBracket(
            f"no eigenvalue with {target_nodes} nodes in {_bracket(problem, config)}")
    lo, hi = _bracket(problem, config)
    return min(hits, key=lambda ev: abs(ev.energy - 0.5 * (lo + hi)))


class BenchmarkRow(NamedTuple):
    alpha: float
    e_exact: float
    energies: dict
    errors: dict


def approximation_benchmark(problem: ValidatedProblem, alphas: Sequence[float],
                            schemes: Sequence[Scheme] = (Scheme.paper(), Scheme.unshifted()),
                            family: str = "nonrelativistic",
                            config: OracleConfig | None = None) -> list[BenchmarkRow]:
    """Closed-form error of each scheme against the exact-barrier oracle.

    ``family`` is ``"nonrelativistic"`` (doubled-potential Schrodinger
    problem, needs ``s0 == v0``) or ``"klein-gordon"`` (particle branch).
    The oracle targets ``problem.state.n`` nodes.
    """
    if family == "nonrelativistic":
        mode = OracleMode.NONREL_EXACT

        def closed(p, sch):
            return energy_nonrelativistic(p, sch)
    elif family == "klein-gordon":
        mode = OracleMode.EXACT

        def closed(p, sch):
            return energy_general(p, sch).energy("plus")
    else:
        raise InvalidInput(f"unknown benchmark family {family!r}")
    base = config or OracleConfig(mode=mode, scan_points=120)
    base = replace(base, mode=mode)
    rows = []
    for alpha in alphas:
        p = problem.with_alpha(alpha)
        energies = {str(sch): closed(p, sch) for sch in schemes}
        seed = energies[str(schemes[-1])]
        cfg = replace(base, e_bracket=seeded_bracket(p, base, seed))
        exact = find_eigenvalue(p, cfg, p.state.n).energy
        errors = {k: abs(v - exact) for k, v in energies.items()}
        rows.append(BenchmarkRow(float(alpha), exact, energies, errors))
    return rows
