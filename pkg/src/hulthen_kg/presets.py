"""Published reference spectra and the parameter sets used to check them.

Values are the printed six-decimal energies; ``None`` marks a state listed
without a real energy.  All three tables use ``alpha = 1``, ``D = 3`` and
the unshifted barrier approximation, with ``n`` taken exactly as printed.
"""

from __future__ import annotations

from typing import NamedTuple

from .model import ValidatedProblem, make_problem

TABLE_ALPHA = 1.0


class TableRow(NamedTuple):
    v0: float
    s0: float
    m0: float
    m1: float
    n: int
    l: int
    e_plus: float | None
    e_minus: float | None

    def problem(self, alpha: float = TABLE_ALPHA) -> ValidatedProblem:
        return make_problem(self.v0, self.s0, alpha, self.m0, self.m1, self.n, self.l)

    @property
    def is_dash(self) -> bool:
        return self.e_plus is None


def _block(v0, s0, m0, m1, rows):
    return [TableRow(v0, s0, m0, m1, n, l, ep, em) for n, l, ep, em in rows]


_D = (None, None)

TABLE1 = (
    _block(1, 1, 1, 0, [(1, 0, 1.0, -0.6), (1, 1, *_D)])
    + _block(2, 2, 1, 0, [
        (1, 0, 0.707107, -0.707107), (1, 1, 0.984171, -0.214941), (1, 2, *_D),
        (2, 0, 0.984171, -0.214941), (2, 1, *_D)])
    + _block(3, 3, 1, 0, [
        (1, 0, 0.302169, -0.763708), (1, 1, 0.911438, -0.411438), (1, 2, 0.6, 0.6),
        (1, 3, *_D), (2, 0, 0.911438, -0.411438), (2, 1, 0.6, 0.6), (2, 2, *_D),
        (3, 0, 0.6, 0.6), (3, 1, *_D)])
    + _block(6, 6, 1, 0, [
        (1, 0, -0.355051, -0.844949), (1, 1, 0.235890, -0.635890),
        (1, 2, 0.763708, -0.302169), (1, 3, 0.994273, 0.284416),
        (2, 0, 0.235890, -0.635890), (2, 1, 0.763708, -0.302169),
        (2, 2, 0.994273, -0.284416), (2, 3, *_D), (3, 0, 0.763708, -0.302169),
        (3, 1, 0.994273, 0.284416), (3, 2, *_D), (4, 0, 0.994273, 0.284416)])
)

TABLE2 = (
    _block(8, 8, 1, 0, [
        (1, 0, -0.539504, -0.872260), (1, 1, -0.063251, -0.703872),
        (1, 2, 0.447214, -0.447214), (1, 3, 0.870312, -0.061324),
        (1, 4, 0.8, 0.8), (1, 5, *_D),
        (2, 0, -0.063251, -0.703872), (2, 1, 0.447214, -0.447214),
        (2, 2, 0.870312, -0.061324), (2, 3, 0.8, 0.8), (2, 4, *_D),
        (3, 0, 0.447214, -0.447214), (3, 1, 0.870312, -0.061324),
        (3, 2, 0.8, 0.8), (3, 3, *_D),
        (4, 0, 0.870312, -0.061324), (4, 1, 0.8, 0.8), (4, 2, *_D),
        (5, 0, 0.8, 0.8), (5, 1, *_D), (6, 0, *_D)])
    + _block(20, 20, 1, 0, [
        (1, 0, -0.846811, -0.935368), (1, 1, -0.662662, -0.853230),
        (1, 2, -0.418342, -0.735504), (1, 3, -0.127025, -0.578857),
        (1, 4, 0.194284, -0.377770), (1, 5, 0.523260, -0.122370),
        (1, 6, 0.825665, 0.208818), (1, 7, 0.998229, 0.706553),
        (2, 0, -0.662662, -0.853230), (2, 1, -0.418342, -0.735504),
        (2, 2, -0.127025, -0.578857), (2, 3, 0.194284, -0.377770),
        (2, 4, 0.523260, -0.122370), (2, 5, 0.825665, 0.208818),
        (2, 6, 0.998229, 0.706553),
        (3, 0, -0.418342, -0.735504), (3, 1, -0.127025, -0.578857),
        (3, 2, 0.194284, -0.377770), (3, 3, 0.523260, -0.122370),
        (3, 4, 0.825665, 0.208818), (3, 5, 0.998229, 0.706553),
        (4, 0, -0.127025, -0.578857), (4, 1, 0.194284, -0.377770),
        (4, 2, 0.523260, -0.122370), (4, 3, 0.825665, 0.208818),
        (4, 4, 0.998229, 0.706553),
        (5, 0, 0.194284, -0.377770), (5, 1, 0.523260, -0.122370),
        (5, 2, 0.825665, 0.208818), (5, 3, 0.998229, 0.706553),
        (6, 0, 0.523260, -0.122370), (6, 1, 0.825665, 0.208818),
        (6, 2, 0.998229, 0.706553),
        (7, 0, 0.825665, 0.208818), (7, 1, 0.998229, 0.706553),
        (8, 0, 0.998229, 0.706553), (9, 0, *_D)])
)

_T3_LOW_N = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (3, 3)]


def _t3(v0, s0, m1, energies, states=_T3_LOW_N):
    return [TableRow(v0, s0, 5, m1, n, l, ep, em)
            for (n, l), (ep, em) in zip(states, energies)]


TABLE3 = (
    _t3(2, 2, 0.01, [
        (0.822925, -4.913410), (3.110670, -4.804170), (3.065630, -4.807820),
        (4.252020, -4.650830), (4.795730, -4.445800), (4.229630, -4.655840),
        (4.793910, -4.447040), (4.989330, -4.185200), (4.956220, -3.857960)])
    + _t3(-2, 2, 0.01, [
        (4.913410, -0.822930), (4.804170, -3.110670), (4.807820, -3.065630),
        (4.650830, -4.252020), (4.445800, -4.795730), (4.655840, -4.229630),
        (4.447040, -4.793910), (4.185200, -4.989330), (3.857960, -4.956220)])
    + _t3(-2, 5, 0.1, [
        (4.871650, -3.222360), (4.926240, -3.503700), (5.000000, -4.245710),
        (4.995470, -4.392630), (4.965180, -4.615030), (4.915250, -4.768460),
        (4.878060, -4.836860), (4.793250, -4.930300), (4.647670, -4.993400)])
    + _t3(-10, 20, 1, [
        (4.857570, -1.483450), (4.875450, -1.571890), (4.999480, -2.709050),
        (4.999990, -2.772530), (4.998750, -2.895220), (4.924130, -3.601650),
        (4.914310, -3.648140), (4.893220, -3.737900), (4.858140, -3.864780)])
    + _t3(1, 1, 0.1, [
        (3.443410, -4.868720), (4.722690, -4.742880), (4.618770, -4.768190),
        (4.982510, -4.577550), (4.964780, -4.347700), (4.960360, -4.613290),
        (4.967570, -4.354450), (4.788530, -4.056980), (4.484330, -3.682040),
        (4.984480, -4.401670), (4.794830, -4.065620), (4.488330, -3.686650),
        (4.054980, -3.206920), (3.455290, -2.575480), (4.837690, -4.126180),
        (4.497830, -3.697630), (4.060510, -3.212870), (3.459590, -2.579950),
        (2.567010, -1.664550), _D],
        _T3_LOW_N + [(4, 0), (4, 1), (4, 2), (4, 3), (4, 4),
                     (5, 0), (5, 1), (5, 2), (5, 3), (5, 4), (5, 5)])
)

TABLES = {"table1": TABLE1, "table2": TABLE2, "table3": TABLE3}


def _find(table, v0, s0, m1, n, l) -> TableRow:
    for row in TABLES[table]:
        if (row.v0, row.s0, row.m1, row.n, row.l) == (v0, s0, m1, n, l):
            return row
    raise KeyError((table, v0, s0, m1, n, l))


class Erratum(NamedTuple):
    table: str
    row: TableRow
    branch: str
    printed: float
    corrected: float
    evidence: tuple[tuple[int, int], ...]


# A sign slip: with equal couplings and no shift the spectrum depends on n+l
# only, and the other three n+l=4 rows of the same block print +0.284416.
ERRATA = (
    Erratum("table1", _find("table1", 6, 6, 0, 2, 2), "minus", -0.284416, 0.284416,
            ((1, 3), (3, 1), (4, 0))),
)


def erratum_for(table: str, row: TableRow, branch: str) -> Erratum | None:
    for e in ERRATA:
        if e.table == table and e.row == row and e.branch == branch:
            return e
    return None


class SampleState(NamedTuple):
    label: str
    row: TableRow
    branch: str

    @property
    def printed(self) -> float:
        return self.row.e_plus if self.branch == "plus" else self.row.e_minus


# Twelve states that solve the unsquared energy equation, spread over the
# three tables and both branches.
ORACLE_SAMPLES = tuple(SampleState(f"{t}:V0={v0},S0={s0},m1={m1},n={n},l={l},{b}",
                                   _find(t, v0, s0, m1, n, l), b)
                       for t, v0, s0, m1, n, l, b in [
    ("table1", 2, 2, 0, 1, 0, "plus"),
    ("table1", 3, 3, 0, 1, 1, "plus"),
    ("table1", 6, 6, 0, 1, 1, "plus"),
    ("table2", 8, 8, 0, 1, 0, "plus"),
    ("table2", 8, 8, 0, 1, 1, "plus"),
    ("table2", 20, 20, 0, 1, 0, "plus"),
    ("table3", 2, 2, 0.01, 1, 0, "plus"),
    ("table3", 2, 2, 0.01, 2, 1, "plus"),
    ("table3", -2, 2, 0.01, 1, 0, "minus"),
    ("table3", -10, 20, 1, 2, 1, "plus"),
    ("table3", -10, 20, 1, 2, 1, "minus"),
    ("table3", -2, 5, 0.1, 1, 1, "plus"),
])

# Bound-state counts quoted for n starting at 1: (v0, s0, m0, m1) -> count.
STATE_COUNTS = {
    (1, 1, 1, 0): 1, (2, 2, 1, 0): 3, (3, 3, 1, 0): 6, (6, 6, 1, 0): 10,
    (8, 8, 1, 0): 15, (20, 20, 1, 0): 36, (1, 1, 5, 0.1): 46,
}
