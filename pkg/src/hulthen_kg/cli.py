"""Command-line interface.

Exit codes: 0 success, 1 no real state or failed verification, 2 invalid input.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import (ConstraintViolation, DomainError, HulthenError, InvalidInput,
                     NotBound, NotFoundInBracket)
from .model import MassSpec, PotentialSpec, Scheme, make_problem
from .oracle import (OracleConfig, approximation_benchmark, find_eigenvalue,
                     seeded_bracket)
from .presets import ORACLE_SAMPLES, TABLES, SampleState, TableRow
from .shift import approximation_error_profile, shift_parameters
from .spectrum import (energy_equation_residual, energy_general,
                       enumerate_bound_states)
from .wavefn import radial_wavefunction, sample_wavefunction

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
COMMANDS = ("shift-params", "energy", "table", "centrifugal", "enumerate",
            "wavefunction", "verify")
VERIFY_TOLERANCE = 5e-6


class _Fail(Exception):
    """Carries a finished payload out of a command that must exit 1."""

    def __init__(self, payload):
        self.payload = payload


# --- output ------------------------------------------------------------------

def _energy_cell(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "-"
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _num_cell(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "-"
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{x:.9g}"


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(f"{x:.9g}") if math.isfinite(x) else None
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    return x


class Table:
    """Rows for CSV/JSON emission; ``energy_cols`` get fixed 6 decimals."""

    def __init__(self, columns, energy_cols=(), comments=()):
        self.columns = list(columns)
        self.energy_cols = set(energy_cols)
        self.comments = list(comments)
        self.rows: list[dict] = []

    def add(self, **row):
        self.rows.append(row)

    def csv(self) -> str:
        buf = io.StringIO()
        for c in self.comments:
            buf.write(f"# {c}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            cells = [(_energy_cell if c in self.energy_cols else _num_cell)(row.get(c))
                     for c in self.columns]
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()

    def json(self):
        return [{c: row.get(c) for c in self.columns} for row in self.rows]


def _render(payload, fmt: str) -> str:
    if isinstance(payload, Table):
        if fmt == "csv":
            return payload.csv()
        payload = payload.json()
    elif fmt == "csv":
        payload = _dict_table(payload).csv()
        return payload
    return json.dumps(_json_value(payload), indent=2) + "\n"


def _dict_table(obj: dict) -> Table:
    # CSV cells are numeric or "-", so text fields stay JSON-only
    keep = {k: v for k, v in obj.items() if not isinstance(v, (str, list, dict))}
    t = Table(keep.keys(), energy_cols={k for k in keep if k.startswith("e_")})
    t.add(**keep)
    return t


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


# --- commands -----------------------------------------------------------------

def _scheme(args) -> Scheme:
    return Scheme.parse(args.scheme)


def _problem(args):
    return make_problem(args.V0, args.S0, args.alpha, args.m0, args.m1, args.n, args.l, args.D)


def cmd_shift_params(args):
    sp = shift_parameters()
    value_res, slope_res = sp.residuals()
    return {"gamma_match": sp.gamma_match, "c0": sp.c0,
            "value_residual": value_res, "slope_residual": slope_res}


def _energy_payload(p, scheme) -> dict:
    out = {"V0": p.potential.v0, "S0": p.potential.s0, "alpha": p.alpha,
           "m0": p.mass.m0, "m1": p.mass.m1, "n": p.state.n, "l": p.state.l,
           "D": p.state.d, "scheme": str(scheme)}
    try:
        res = energy_general(p, scheme)
    except ConstraintViolation as exc:
        out.update(status=f"NoRealState({exc.constraint})", e_plus=None, e_minus=None)
        return out
    it = res.intermediates
    out.update(status=res.status_label(), e_plus=res.e_plus, e_minus=res.e_minus,
               kappa=it.kappa, xi=it.xi, delta=it.delta)
    for br in ("plus", "minus"):
        if res.is_real:
            e = res.energy(br)
            r = energy_equation_residual(p, scheme, e)
            out[f"epsilon_{br}"] = it.epsilon(e)
            out[f"rhs_{br}"] = r.rhs
            out[f"residual_{br}"] = r.residual
        else:
            out[f"epsilon_{br}"] = out[f"rhs_{br}"] = out[f"residual_{br}"] = None
    return out


def cmd_energy(args):
    out = _energy_payload(_problem(args), _scheme(args))
    if out["e_plus"] is None:
        raise _Fail(out)
    return out


def cmd_table(args):
    t = Table(["V0", "S0", "m0", "m1", "n", "l", "E_plus", "E_minus"],
              energy_cols={"E_plus", "E_minus"})
    for row in TABLES[args.preset]:
        try:
            res = energy_general(row.problem(), Scheme.unshifted())
        except ConstraintViolation:
            res = None
        ep, em = (res.e_plus, res.e_minus) if res is not None else (None, None)
        t.add(V0=row.v0, S0=row.s0, m0=row.m0, m1=row.m1, n=row.n, l=row.l,
              E_plus=ep, E_minus=em)
    return t


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"bad number list {text!r}") from exc
    if not vals:
        raise InvalidInput("empty number list")
    return vals


def _centrifugal_table(alpha, args, with_alpha: bool) -> Table:
    cols = ["r", "alpha_r", "exact", "approx", "relative_error"]
    t = Table((["alpha"] if with_alpha else []) + cols)
    for pt in approximation_error_profile(alpha, args.r_min, args.r_max, args.samples,
                                          _scheme(args)):
        t.add(alpha=alpha, r=pt.r, alpha_r=alpha * pt.r, exact=pt.exact,
              approx=pt.approx, relative_error=pt.relative_error)
    return t


def cmd_centrifugal(args):
    alphas = _float_list(args.alpha)
    for a in alphas:
        if not a > 0:
            raise InvalidInput(f"alpha must be > 0, got {a}")
    if args.output and len(alphas) > 1:
        # one file per screening parameter next to the requested path
        base = Path(args.output)
        for a in alphas:
            target = base.with_name(f"{base.stem}_alpha{a:g}{base.suffix}")
            _emit(_render(_centrifugal_table(a, args, False), args.format or "csv"), str(target))
        return None
    if len(alphas) == 1:
        return _centrifugal_table(alphas[0], args, False)
    merged = _centrifugal_table(alphas[0], args, True)
    for a in alphas[1:]:
        merged.rows += _centrifugal_table(a, args, True).rows
    return merged


def cmd_enumerate(args):
    states = enumerate_bound_states(
        PotentialSpec(args.V0, args.S0, args.alpha), MassSpec(args.m0, args.m1),
        args.D, _scheme(args), args.n_start, args.n_max, args.l_max)
    # validate once so bad inputs exit 2 even when the scan is empty
    make_problem(args.V0, args.S0, args.alpha, args.m0, args.m1, args.n_start, 0, args.D)
    t = Table(["n", "l", "E_plus", "E_minus"], energy_cols={"E_plus", "E_minus"},
              comments=[f"count={len(states)}"])
    for n, l, res in states:
        t.add(n=n, l=l, E_plus=res.e_plus, E_minus=res.e_minus)
    return t


def cmd_wavefunction(args):
    p = _problem(args)
    try:
        wf = radial_wavefunction(p, _scheme(args), args.branch, strict=args.strict)
    except (NotBound, ConstraintViolation) as exc:
        raise _Fail({"status": "NoRealState", "reason": str(exc)}) from exc
    r_max = args.r_max if args.r_max is not None else 40.0 / (wf.epsilon * p.alpha)
    r_min = args.r_min if args.r_min is not None else r_max / args.points
    if not 0 < r_min < r_max or args.points < 2:
        raise InvalidInput("need 0 < r_min < r_max and points >= 2")
    meta = {"energy": wf.energy, "epsilon": wf.epsilon, "delta": wf.delta,
            "jacobi_degree": wf.jacobi.degree, "jacobi_a": wf.jacobi.a,
            "jacobi_b": wf.jacobi.b, "norm": wf.norm,
            "solves_radial_equation": wf.solves_radial_equation}
    samples = sample_wavefunction(wf, np.linspace(r_min, r_max, args.points))
    if args.format == "json":
        return {**meta, "r": [s[0] for s in samples], "R": [s[1] for s in samples]}
    t = Table(["r", "R"], comments=[f"{k}={_num_cell(v)}" for k, v in meta.items()])
    for r, val in samples:
        t.add(r=r, R=val)
    return t


def _verify_state(sample: SampleState, config: OracleConfig, tol: float) -> dict:
    p = sample.row.problem()
    res = energy_general(p, config.scheme)
    e = res.energy(sample.branch)
    genuine = res.intermediates.signed_epsilon(e) > 0
    cfg = replace(config, e_bracket=seeded_bracket(p, config, e))
    try:
        ev = find_eigenvalue(p, cfg, p.state.n)
        oracle, diff = ev.energy, abs(ev.energy - e)
    except NotFoundInBracket:
        oracle, diff = None, None
    hit = diff is not None and diff < tol
    # genuine states must be reproduced; spurious roots must not be
    ok = hit if genuine else not hit
    row = sample.row
    return {"V0": row.v0, "S0": row.s0, "m0": row.m0, "m1": row.m1, "n": row.n,
            "l": row.l, "branch": 1 if sample.branch == "plus" else -1,
            "closed_form": e, "genuine": genuine, "oracle": oracle,
            "abs_diff": diff, "pass": ok}


def _preset_samples(name: str) -> list[SampleState]:
    if name == "samples":
        return list(ORACLE_SAMPLES)
    out = []
    for row in TABLES[name]:
        if row.is_dash:
            continue
        for br in ("plus", "minus"):
            label = f"{name}:V0={row.v0},S0={row.s0},m1={row.m1},n={row.n},l={row.l},{br}"
            out.append(SampleState(label, row, br))
    return out


def cmd_verify(args):
    config = OracleConfig(scheme=_scheme(args), grid_points=args.grid_points)
    if args.benchmark:
        p = make_problem(0.25, 0.25, 0.1, 1.0, 0.0, 0, 1, 3)
        t = Table(["alpha", "e_exact", "e_shifted", "e_unshifted", "err_shifted",
                   "err_unshifted", "pass"], energy_cols=set())
        ok = True
        for row in approximation_benchmark(p, [0.05, 0.1, 0.15, 0.2, 0.25]):
            good = row.errors["paper"] <= row.errors["unshifted"]
            ok &= good
            t.add(alpha=row.alpha, e_exact=row.e_exact, e_shifted=row.energies["paper"],
                  e_unshifted=row.energies["unshifted"], err_shifted=row.errors["paper"],
                  err_unshifted=row.errors["unshifted"], **{"pass": good})
        if not ok:
            raise _Fail(t)
        return t
    samples: list[SampleState] = []
    for name in args.preset or []:
        samples += _preset_samples(name)
    if args.V0 is not None:
        row = TableRow(args.V0, args.S0, args.m0, args.m1, args.n, args.l, None, None)
        make_problem(args.V0, args.S0, 1.0, args.m0, args.m1, args.n, args.l)
        samples.append(SampleState("custom", row, args.branch))
    if not samples:
        raise InvalidInput("verify needs --preset, --benchmark or a state")
    t = Table(["V0", "S0", "m0", "m1", "n", "l", "branch", "closed_form", "genuine",
               "oracle", "abs_diff", "pass"],
              energy_cols={"closed_form", "oracle"})
    ok = True
    for s in samples:
        row = _verify_state(s, config, VERIFY_TOLERANCE)
        ok &= row["pass"]
        t.add(**row)
    if not ok:
        raise _Fail(t)
    return t


HANDLERS = {
    "shift-params": cmd_shift_params, "energy": cmd_energy, "table": cmd_table,
    "centrifugal": cmd_centrifugal, "enumerate": cmd_enumerate,
    "wavefunction": cmd_wavefunction, "verify": cmd_verify,
}
DEFAULT_FORMAT = {"shift-params": "json", "energy": "json"}


# --- job files ----------------------------------------------------------------

@dataclass
class JobSpec:
    command: str
    parameters: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidInput(f"unknown command {self.command!r}")

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "parameters": self.parameters,
                           "output": self.output}, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "JobSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"job file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or "command" not in data:
            raise InvalidInput("job file needs a 'command' key")
        return cls(data["command"], dict(data.get("parameters", {})),
                   dict(data.get("output", {})))

    def to_argv(self) -> list[str]:
        argv = []
        if self.output.get("format"):
            argv += ["--format", self.output["format"]]
        if self.output.get("path"):
            argv += ["--output", self.output["path"]]
        argv.append(self.command)
        for key, value in self.parameters.items():
            flag = "--" + key.replace("_", "-") if len(key) > 2 else "--" + key
            if value is True:
                argv.append(flag)
            elif value is False or value is None:
                continue
            elif isinstance(value, list):
                argv += [flag, *map(str, value)]
            else:
                argv += [flag, str(value)]
        return argv


# --- parser -------------------------------------------------------------------

def _common(sub_default):
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", default=sub_default, help="write to this file instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default=sub_default)
    p.add_argument("--job", default=sub_default, help="run the command stored in a JSON job file")
    return p


def _state_flags(p, required=True):
    for name in ("V0", "S0"):
        p.add_argument(f"--{name}", type=float, required=required)
    p.add_argument("--alpha", type=float, required=required)
    p.add_argument("--m0", type=float, default=1.0)
    p.add_argument("--m1", type=float, default=0.0)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--D", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hulthen-kg", parents=[_common(None)],
        description="Klein-Gordon bound states in scalar and vector Hulthen potentials.")
    common = _common(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("shift-params", parents=[common], help="constants of the shifted barrier approximation")

    p = sub.add_parser("energy", parents=[common], help="closed-form energies of one state")
    _state_flags(p)
    p.add_argument("--scheme", default="unshifted")

    p = sub.add_parser("table", parents=[common], help="recompute a published table")
    p.add_argument("preset", choices=sorted(TABLES))

    p = sub.add_parser("centrifugal", parents=[common], help="barrier approximation profile")
    p.add_argument("--alpha", required=True, help="one value or a comma list")
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--scheme", default="paper")

    p = sub.add_parser("enumerate", parents=[common], help="all real states in a window")
    _state_flags(p)
    p.add_argument("--scheme", default="unshifted")
    p.add_argument("--n-start", type=int, default=1)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--l-max", type=int, default=64)

    p = sub.add_parser("wavefunction", parents=[common], help="sample a normalized radial function")
    _state_flags(p)
    p.add_argument("--scheme", default="unshifted")
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--strict", action="store_true",
                   help="refuse energies that only solve the squared energy equation")

    p = sub.add_parser("verify", parents=[common], help="check closed forms against the shooting oracle")
    p.add_argument("--preset", action="append", choices=sorted(TABLES) + ["samples"])
    p.add_argument("--benchmark", choices=("nonrel-l1",))
    _state_flags(p, required=False)
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--scheme", default="unshifted")
    p.add_argument("--grid-points", type=int, default=20001)
    return parser


def _run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    job = getattr(args, "job", None)
    if job:
        try:
            spec = JobSpec.from_json(Path(job).read_text(encoding="utf-8"))
        except OSError as exc:
            print(f"error: cannot read job file: {exc}", file=sys.stderr)
            return EXIT_INVALID
        except InvalidInput as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        return _run(spec.to_argv())
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_INVALID
    args.output = getattr(args, "output", None)
    fmt = getattr(args, "format", None)
    args.format = fmt
    out_fmt = fmt or DEFAULT_FORMAT.get(args.command, "csv")
    try:
        payload = HANDLERS[args.command](args)
        code = EXIT_OK
    except _Fail as fail:
        payload, code = fail.payload, EXIT_FAIL
    except (InvalidInput, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except HulthenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if payload is not None:
        _emit(_render(payload, out_fmt), args.output)
    return code


def main(argv=None) -> int:
    return _run(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
