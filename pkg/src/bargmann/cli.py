"""Batch command line front end.

Commands: canon, polytope, eval, witness, figure, verify.  Inputs and outputs
are JSON files (CSV for figure data); every command is deterministic given its
inputs and the seed, so repeated runs produce byte-identical files.

Exit codes: 0 success, 1 usage error or failed verification, 2 resource gate
tripped, 3 invalid input data.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import ResourceLimitError
from .figures import FIGURE_NAMES, figure_rows, render_png, write_csv
from .polytope import (
    DEFAULT_ASSIGNMENT_CAP,
    MEMBERSHIP_TOL,
    facet_enumerate,
    load_inequality,
    max_violation,
    membership,
    polytope_to_dict,
    verify_facet,
    vertex_enumerate,
)
from .scenarios import load_scenario, scenario_to_dict, word_labels
from .states import evaluate, gram_invariants, load_gram, load_states
from .verify import DEFAULT_SEED, run_all

#: Imaginary parts below this are formatted as plain reals in CLI output.
IMAG_DISPLAY_TOL = 1e-12

#: Float coordinates are snapped to this dyadic grid before exact feasibility
#: runs (witness fallback when the facet system is gated); the snap moves a
#: point by at most 2^-41 per coordinate, far below the membership tolerance.
SNAP_BITS = 40


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here reserves 2 for
    resource gates, so usage errors exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _format_value(v: complex):
    if abs(v.imag) < IMAG_DISPLAY_TOL:
        return float(v.real)
    return {"re": float(v.real), "im": float(v.imag)}


def _cmd_canon(args) -> int:
    scenario = load_scenario(args.scenario)
    _emit(_json_text(scenario_to_dict(scenario)), args.out)
    return 0


def _cmd_polytope(args) -> int:
    scenario = load_scenario(args.scenario)
    cap = args.cap if args.cap is not None else DEFAULT_ASSIGNMENT_CAP
    vs = vertex_enumerate(scenario, cap=cap)
    if args.facets:
        hrep = facet_enumerate(vs)
        data = polytope_to_dict(vs, hrep.equalities, hrep.facets)
    else:
        # affine hull and facets are --facets territory; vertex output alone
        # never triggers the dimension gate
        data = polytope_to_dict(vs, ())
    _emit(_json_text(data), args.out)
    return 0


def _cmd_eval(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.states:
        vector = evaluate(load_states(args.states), scenario)
    else:
        gram, letters = load_gram(args.gram)
        vector = gram_invariants(gram, letters, scenario)
    data = {
        label: _format_value(complex(v))
        for label, v in zip(word_labels(scenario), vector.values)
    }
    _emit(_json_text(data), args.out)
    return 0


def _snap_dyadic(z) -> list[Fraction]:
    scale = 1 << SNAP_BITS
    return [Fraction(round(float(x) * scale), scale) for x in z]


def _cmd_witness(args) -> int:
    scenario = load_scenario(args.scenario)
    realization = load_states(args.states)
    tol = args.tol if args.tol is not None else MEMBERSHIP_TOL
    cap = args.cap if args.cap is not None else DEFAULT_ASSIGNMENT_CAP
    vector = evaluate(realization, scenario)
    vs = vertex_enumerate(scenario, cap=cap)
    imag = vector.max_abs_imag
    report: dict = {"max_abs_imag": imag}
    z = None
    if imag > tol:
        # no classical point has an imaginary part, so this alone is a verdict
        report["verdict"] = "outside"
        report["membership_path"] = "imaginary"
        report["violations"] = [{"kind": "imaginary", "index": 0, "amount": imag}]
    else:
        z = vector.real_vector(imag_tol=tol)
        try:
            hrep = facet_enumerate(vs)
            result = membership(z, hrep=hrep, tol=tol)
            path = "facets"
        except ResourceLimitError:
            result = membership(_snap_dyadic(z), vertex_set=vs)
            path = "vertices"
        report["verdict"] = result.verdict
        report["membership_path"] = path
        report["violations"] = [
            {"kind": v.kind, "index": v.index, "amount": v.amount}
            for v in result.violations
        ]
    if args.ineq:
        ineq = load_inequality(args.ineq)
        check = verify_facet(ineq, vs)
        entry = {
            "valid": check.valid,
            "facet_defining": check.facet_defining,
            "saturating_count": check.saturating_count,
            "violation": None,
        }
        if z is not None:
            _, value = max_violation(ineq, [z])
            entry["violation"] = value
        report["inequality"] = entry
    _emit(_json_text(report), args.out)
    return 0


def _cmd_figure(args) -> int:
    rows = figure_rows(args.name)
    out = args.out if args.out else f"{args.name}.csv"
    write_csv(rows, out)
    written = [out]
    if not args.no_plot:
        png = str(Path(out).with_suffix(".png"))
        render_png(rows, png)
        written.append(png)
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    results = run_all(seed=seed)
    for result in results:
        print(result.line)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed (seed {seed})")
    return 0 if passed == len(results) else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="bargmann", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="canonicalize a scenario file")
    p.add_argument("--scenario", required=True, help="scenario JSON path")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("polytope", help="enumerate the classical polytope")
    p.add_argument("--scenario", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--vertices", action="store_true", help="vertices only")
    group.add_argument(
        "--facets", action="store_true", help="vertices, affine hull and facets"
    )
    p.add_argument("--cap", type=int, help="assignment-scan ceiling")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_polytope)

    p = sub.add_parser("eval", help="evaluate invariants of a state tuple")
    p.add_argument("--scenario", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--states", help="states JSON path")
    group.add_argument("--gram", help="gram JSON path (pure tuples)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser(
        "witness", help="test a state tuple against the classical polytope"
    )
    p.add_argument("--scenario", required=True)
    p.add_argument("--states", required=True)
    p.add_argument("--ineq", help="inequality JSON to certify and evaluate")
    p.add_argument("--tol", type=float, help="membership tolerance")
    p.add_argument("--cap", type=int, help="assignment-scan ceiling")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("figure", help="emit figure data (CSV, plus a PNG)")
    p.add_argument(
        "name",
        nargs="?",
        default="two-word",
        choices=FIGURE_NAMES,
        help="figure name",
    )
    p.add_argument("--out", help="CSV path (default: <name>.csv)")
    p.add_argument(
        "--no-plot", action="store_true", help="skip the PNG, write CSV only"
    )
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("verify", help="run the claims suite")
    p.add_argument("--seed", type=int, help=f"sample seed (default {DEFAULT_SEED})")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("tol",):
        value = getattr(args, name, None)
        if value is not None and value <= 0:
            parser.error(f"--{name} must be positive")
    for name in ("cap",):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name} must be at least 1")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        # BargmannError subclasses ValueError; JSONDecodeError does too
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
