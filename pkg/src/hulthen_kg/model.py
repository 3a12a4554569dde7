"""Domain types and input validation.

Natural units (hbar = c = 1) are used throughout, so energies, masses and
potential strengths share one unit and the screening parameter ``alpha`` is
an inverse length in the same system.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidInput


def _finite(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise InvalidInput(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PotentialSpec:
    """Vector and scalar Hulthen strengths with a common screening parameter.

    ``V(r) = -v0 e^{-alpha r} / (1 - e^{-alpha r})`` and likewise for ``S``
    with ``s0``.  Either strength may be negative.
    """

    v0: float
    s0: float
    alpha: float

    @property
    def r0(self) -> float:
        return 1.0 / self.alpha


@dataclass(frozen=True)
class MassSpec:
    """Position-dependent mass ``m(r) = m0 + m1 e^{-alpha r}/(1 - e^{-alpha r})``."""

    m0: float
    m1: float = 0.0


@dataclass(frozen=True)
class QuantumState:
    n: int
    l: int
    d: int = 3

    @property
    def gamma_ang(self) -> float:
        """Angular factor ``(D+2l-1)(D+2l-3)/4`` of the centrifugal barrier."""
        return angular_factor(self.d, self.l)


def angular_factor(d: int, l: int) -> float:
    k = d + 2 * l
    return (k - 1) * (k - 3) / 4.0


class SchemeKind(enum.Enum):
    UNSHIFTED = "unshifted"
    PAPER_SHIFTED = "paper"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Scheme:
    """Selects the constant shift ``c0`` of the centrifugal approximation.

    Use the constructors :meth:`unshifted`, :meth:`paper` and :meth:`custom`.
    ``Scheme.custom(0.0)`` behaves exactly like ``Scheme.unshifted()``.
    """

    kind: SchemeKind
    custom_c0: float = 0.0

    @classmethod
    def unshifted(cls) -> "Scheme":
        return cls(SchemeKind.UNSHIFTED)

    @classmethod
    def paper(cls) -> "Scheme":
        return cls(SchemeKind.PAPER_SHIFTED)

    @classmethod
    def custom(cls, c0: float) -> "Scheme":
        c0 = _finite("c0", c0)
        if c0 < 0:
            raise InvalidInput(f"custom shift c0 must be >= 0, got {c0}")
        return cls(SchemeKind.CUSTOM, c0)

    @classmethod
    def parse(cls, text: str) -> "Scheme":
        """Parse ``unshifted``, ``paper`` or ``custom:<c0>``."""
        key = text.strip().lower()
        if key == "unshifted":
            return cls.unshifted()
        if key in ("paper", "shifted", "paper-shifted"):
            return cls.paper()
        if key.startswith("custom:"):
            try:
                return cls.custom(float(key.split(":", 1)[1]))
            except ValueError as exc:
                raise InvalidInput(f"bad custom scheme {text!r}") from exc
        raise InvalidInput(f"unknown scheme {text!r}")

    @property
    def c0(self) -> float:
        if self.kind is SchemeKind.UNSHIFTED:
            return 0.0
        if self.kind is SchemeKind.CUSTOM:
            return self.custom_c0
        from .shift import shift_parameters

        return shift_parameters().c0

    def __str__(self) -> str:
        if self.kind is SchemeKind.CUSTOM:
            return f"custom:{self.custom_c0:g}"
        return self.kind.value


@dataclass(frozen=True)
class ValidatedProblem:
    """A potential, mass and state that passed :func:`validate`."""

    potential: PotentialSpec
    mass: MassSpec
    state: QuantumState

    @property
    def s_tilde(self) -> float:
        """Modified scalar strength ``s0 - m1``."""
        return self.potential.s0 - self.mass.m1

    @property
    def gamma_ang(self) -> float:
        return self.state.gamma_ang

    @property
    def r0(self) -> float:
        return self.potential.r0

    @property
    def alpha(self) -> float:
        return self.potential.alpha

    def with_state(self, n: int | None = None, l: int | None = None,
                   d: int | None = None) -> "ValidatedProblem":
        st = self.state
        return validate(self.potential, self.mass, QuantumState(
            st.n if n is None else n, st.l if l is None else l,
            st.d if d is None else d))

    def with_alpha(self, alpha: float) -> "ValidatedProblem":
        p = self.potential
        return validate(PotentialSpec(p.v0, p.s0, alpha), self.mass, self.state)


def _nonneg_int(name: str, value, minimum: int = 0) -> int:
    try:
        ok = not isinstance(value, bool) and int(value) == value
    except (TypeError, ValueError, OverflowError):
        ok = False
    if not ok:
        raise InvalidInput(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise InvalidInput(f"{name} must be >= {minimum}, got {value}")
    return value


def validate(potential: PotentialSpec, mass: MassSpec,
             state: QuantumState) -> ValidatedProblem:
    """Check every field and return an immutable problem bundle.

    Raises :class:`InvalidInput` for non-finite values, ``alpha <= 0``,
    ``m0 <= 0``, ``d < 1`` or negative quantum numbers.
    """
    v0 = _finite("v0", potential.v0)
    s0 = _finite("s0", potential.s0)
    alpha = _finite("alpha", potential.alpha)
    if alpha <= 0:
        raise InvalidInput(f"alpha must be > 0, got {alpha}")
    m0 = _finite("m0", mass.m0)
    m1 = _finite("m1", mass.m1)
    if m0 <= 0:
        raise InvalidInput(f"m0 must be > 0, got {m0}")
    n = _nonneg_int("n", state.n)
    l = _nonneg_int("l", state.l)
    d = _nonneg_int("d", state.d, minimum=1)
    return ValidatedProblem(PotentialSpec(v0, s0, alpha), MassSpec(m0, m1),
                            QuantumState(n, l, d))


def make_problem(v0: float, s0: float, alpha: float, m0: float, m1: float,
                 n: int, l: int, d: int = 3) -> ValidatedProblem:
    """Shorthand for ``validate`` from flat parameters."""
    return validate(PotentialSpec(v0, s0, alpha), MassSpec(m0, m1),
                    QuantumState(n, l, d))
