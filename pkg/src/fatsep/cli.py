"""Command-line front end.

    fatsep hilbert @example2
    fatsep separators @ci37 --point 20 --levels
    fatsep betti-tail scheme.json --seed 3 --json
    fatsep ci --type 2,3,4 --mult 3 --shifts
    fatsep verify hilbert-drop --seed 42 --cases 25

Scheme arguments are JSON files or ``@name`` for a shipped fixture.  Exit
status: 0 success, 1 a verification check failed, 2 bad input or
configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field as dc_field

from .cischeme import FIXTURES, CIType, GridSpec, ci_power_shifts, ci_rank, ci_separator_profile, grid_ci, load_fixture, power_scheme
from .exactlin import FieldSpec
from .polyring import form_to_json
from .resolution import GenericityError, last_betti_shifts, socle_dims, socle_vectors
from .scheme import FatPointScheme, FieldTooSmallError, SchemeError, delta_hf, hilbert_function, load_scheme
from .separator import minimal_separators, nu, separating_set, separator_degrees
from .suites import SUITES, run_suite


class UsageError(ValueError):
    """Bad command-line input (exit status 2)."""


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict
    seed: int
    checks: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2, ensure_ascii=False)


def default_seed() -> int:
    raw = os.environ.get("FATSEP_SEED", "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"FATSEP_SEED must be an integer, got {raw!r}") from exc


def parse_field(text: str | None) -> FieldSpec | None:
    """``rational``, ``prime`` or ``prime:P``; None keeps the scheme file's field."""
    if text is None:
        return None
    if text in ("rational", "QQ"):
        return FieldSpec.rational()
    if text == "prime":
        return FieldSpec.prime()
    if text.startswith("prime:"):
        try:
            return FieldSpec.prime(int(text[6:]))
        except ValueError as exc:
            raise UsageError(f"bad field {text!r}: {exc}") from exc
    raise UsageError(f"bad field {text!r}; use rational, prime or prime:P")


def read_scheme(arg: str, field: FieldSpec | None) -> FatPointScheme:
    if arg.startswith("@"):
        return load_fixture(arg[1:], field)
    return load_scheme(arg, field)


def _point_index(Z: FatPointScheme, point: int) -> int:
    if not 1 <= point <= Z.s:
        raise UsageError(f"--point {point} out of range 1..{Z.s}")
    return point - 1


# ------------------------------------------------------------------ commands


def cmd_hilbert(args) -> RunReport:
    Z = read_scheme(args.scheme, args.field)
    H = hilbert_function(Z)
    results = {
        "degree": Z.degree,
        "t_stab": H.t_stab,
        "hilbert": list(H.values),
        "delta": delta_hf(H),
    }
    return RunReport("hilbert", {"scheme": Z.to_json()}, results, args.seed)


def cmd_separators(args) -> RunReport:
    Z = read_scheme(args.scheme, args.field)
    i = _point_index(Z, args.point)
    prof = separator_degrees(Z, i)
    results: dict = {"point": args.point, "nu": nu(Z, i), "profile": list(prof)}
    checks = [{"name": "profile length = nu", "passed": len(prof) == nu(Z, i), "details": f"{len(prof)} entries"}]
    if args.forms:
        seps = minimal_separators(Z, i)
        results["forms"] = [form_to_json(F) for F in seps.forms]
        results["forms_text"] = [str(F) for F in seps.forms]
        checks.append({"name": "form degrees match profile", "passed": [F.degree for F in seps.forms] == list(prof), "details": ""})
    if args.levels:
        results["levels"] = [list(p) for p in separating_set(Z, i).levels]
    return RunReport("separators", {"scheme": Z.to_json(), "point": args.point}, results, args.seed, checks)


def cmd_betti_tail(args) -> RunReport:
    Z = read_scheme(args.scheme, args.field)
    if Z.s == 0:
        raise UsageError("betti-tail needs a nonempty scheme")
    B = last_betti_shifts(Z, args.seed)
    taus = args.tau or sorted({nu(Z, i) for i in range(Z.s)})
    vectors = {}
    for tau in taus:
        if tau <= len(B):
            vectors[str(tau)] = sorted(list(v) for v in socle_vectors(B, tau, Z.n))
    results = {
        "shifts": list(B),
        "socle_dims": {str(t): s for t, s in socle_dims(Z, args.seed).items()},
        "socle_vectors": vectors,
    }
    return RunReport("betti-tail", {"scheme": Z.to_json(), "tau": taus}, results, args.seed)


def cmd_ci(args) -> RunReport:
    try:
        ct = CIType.parse(args.type) if args.type else None
        grid = GridSpec.parse(args.axes) if args.axes else None
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if ct is None and grid is None:
        raise UsageError("ci needs --type or --axes")
    if grid is not None:
        if ct is not None and grid.ci_type() != ct:
            raise UsageError(f"--axes sizes {grid.ci_type().deltas} do not match --type {ct.deltas}")
        ct = grid.ci_type()
    if args.mult < 1:
        raise UsageError("--mult must be positive")
    inputs = {"type": list(ct.deltas), "mult": args.mult}
    results: dict = {}
    want_all = not (args.shifts or args.profile or args.emit_scheme)
    if args.shifts or want_all:
        results["shifts"] = list(ci_power_shifts(ct, args.mult))
    if args.profile or want_all:
        results["profile"] = list(ci_separator_profile(ct, args.mult))
    if want_all:
        results["rank"] = ci_rank(args.mult, ct.n)
    if args.emit_scheme:
        try:
            X, gens = grid_ci(grid or GridSpec.default(ct), args.field or FieldSpec.prime())
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        results["scheme"] = power_scheme(X, args.mult).to_json()
        results["generators"] = [str(G) for G in gens]
    return RunReport("ci", inputs, results, args.seed)


def cmd_verify(args) -> RunReport:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.cases < 1:
        raise UsageError("--cases must be positive")
    field = args.field or FieldSpec.prime()
    checks = [c.to_json() for c in run_suite(args.suite, args.seed, args.cases, field)]
    passed = sum(c["passed"] for c in checks)
    inputs = {"suite": args.suite, "cases": args.cases, "field": field.to_json()}
    return RunReport("verify", inputs, {"passed": passed, "failed": len(checks) - passed}, args.seed, checks)


# ------------------------------------------------------------------- output


def _table(rows: list[tuple[str, list]]) -> str:
    width = max(len(label) for label, _ in rows)
    cols = max(len(vals) for _, vals in rows)
    cells = [[str(v) for v in vals] + [""] * (cols - len(vals)) for _, vals in rows]
    w = [max(len(r[c]) for r in cells) for c in range(cols)]
    return "\n".join(f"{label:>{width}} : " + " ".join(cell.rjust(w[c]) for c, cell in enumerate(r)) for (label, _), r in zip(rows, cells))


def render_text(rep: RunReport) -> str:
    r = rep.results
    lines: list[str] = []
    if rep.command == "hilbert":
        n = len(r["delta"])
        lines.append(_table([("t", list(range(n))), ("H(t)", r["hilbert"] + [r["degree"]] * (n - len(r["hilbert"]))), ("dH(t)", r["delta"])]))
        lines.append(f"deg Z = {r['degree']}, stable from t = {r['t_stab']}")
    elif rep.command == "separators":
        lines.append(f"point {r['point']}: nu = {r['nu']}, degrees of minimal separators = ({','.join(map(str, r['profile']))})")
        for k, F in enumerate(r.get("forms_text", []), 1):
            lines.append(f"  F_{k} = {F}")
        if "levels" in r:
            levels = "{" + ",".join("(" + ",".join(map(str, p)) + ")" for p in reversed(r["levels"])) + "}"
            lines.append(f"minimal separating set = {levels}")
            for h, p in enumerate(r["levels"], 1):
                lines.append(f"  level {h}: ({','.join(map(str, p))})")
    elif rep.command == "betti-tail":
        lines.append(f"last syzygy shifts = ({','.join(map(str, r['shifts']))})")
        lines.append("socle dimensions: " + ", ".join(f"t={t}: {s}" for t, s in r["socle_dims"].items()))
        for tau, vecs in r["socle_vectors"].items():
            lines.append(f"socle vectors of length {tau}: " + ", ".join("(" + ",".join(map(str, v)) + ")" for v in vecs))
    elif rep.command == "ci":
        for key in ("shifts", "profile"):
            if key in r:
                lines.append(f"{key} = ({','.join(map(str, r[key]))})")
        if "rank" in r:
            lines.append(f"rank = {r['rank']}")
        if "scheme" in r:
            lines.append(json.dumps(r["scheme"], sort_keys=True))
    elif rep.command == "verify":
        lines.append(f"suite {rep.inputs['suite']} (seed {rep.seed}): {r['passed']} passed, {r['failed']} failed")
    for c in rep.checks:
        if rep.command == "verify" or not c["passed"]:
            lines.append(f"  [{'PASS' if c['passed'] else 'FAIL'}] {c['name']}" + (f" -- {c['details']}" if c["details"] else ""))
            if not c["passed"] and "scheme" in c:
                lines.append("    replay: " + json.dumps(c["scheme"], sort_keys=True))
    return "\n".join(lines)


# --------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    common.add_argument("--field", default=None, help="rational, prime (p = 2147483647) or prime:P; default: the scheme file's field")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $FATSEP_SEED or 0)")

    parser = argparse.ArgumentParser(prog="fatsep", description="Separators, Hilbert functions and last syzygy shifts of fat points.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function and its first difference")
    p.add_argument("scheme", help=f"scheme JSON file or @fixture ({', '.join(FIXTURES)})")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("separators", parents=[common], help="degrees of the minimal separators of one point")
    p.add_argument("scheme")
    p.add_argument("--point", type=int, required=True, help="1-based point index")
    p.add_argument("--forms", action="store_true", help="also print explicit separator forms")
    p.add_argument("--levels", action="store_true", help="also print the minimal separating set (all levels)")
    p.set_defaults(func=cmd_separators)

    p = sub.add_parser("betti-tail", parents=[common], help="last syzygy shifts and socle vectors")
    p.add_argument("scheme")
    p.add_argument("--tau", type=int, action="append", help="socle-vector length (repeatable; default: every nu of the scheme)")
    p.set_defaults(func=cmd_betti_tail)

    p = sub.add_parser("ci", parents=[common], help="closed forms for powers of complete intersections")
    p.add_argument("--type", help="CI type, e.g. 2,3,4")
    p.add_argument("--mult", type=int, default=1, help="multiplicity m (default 1)")
    p.add_argument("--axes", help="grid axis values, e.g. '1,2;1,2,3'")
    p.add_argument("--shifts", action="store_true")
    p.add_argument("--profile", action="store_true")
    p.add_argument("--emit-scheme", action="store_true", help="print the grid scheme m*X as scheme JSON")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--cases", type=int, default=25, help="random cases (default 25)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.field = parse_field(args.field)
        if args.seed is None:
            args.seed = default_seed()
        rep = args.func(args)
    except (UsageError, SchemeError, FieldTooSmallError, GenericityError, OSError, ValueError) as exc:
        print(f"fatsep: error: {exc}", file=sys.stderr)
        return 2
    print(rep.to_json() if args.json else render_text(rep))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
