"""Command-line interface.

Verbs: analyze a stratified count table, classify a parameterized model,
verify a catalog clause by campaign, and list or evaluate the hypotheses.
All verbs take --format text|json; JSON output is exactly the module
serializers' dictionaries, so identical invocations print identical bytes.
Exit codes: 0 success (for verify, a campaign with zero failures), 1 domain
errors or a failed campaign, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import ConfoundKitError, DegenerateEventError, ParameterError
from .hypotheses import Hypothesis, holds_algebraic, holds_numeric
from .joint import build_joint, params_type
from .measures import DEFAULT_FLOAT_TOL, classify_covariate
from .tables import CoarseningMap, analyze_counts, coarsen, load_counts
from .theorems import clause_lookup, verify_clause

_MODEL_FIELDS = {
    1: ("t", "a0", "a1", "b0", "b1", "u0", "u1"),
    2: ("a", "c0", "c1", "b0", "b1", "u0", "u1"),
    3: ("a", "t", "b0", "b1", "u0", "u1"),
}
_ALL_PARAM_FLAGS = ("t", "a0", "a1", "a", "c0", "c1", "b0", "b1", "u0", "u1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confound-kit",
        description="Confounding analysis for three binary-variable causal structures.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "analyze", help="classify the covariate of a stratified count table"
    )
    p.add_argument("table", help="CSV file with header type,exposure,stratum,count")
    p.add_argument(
        "--coarsen",
        metavar="SPEC",
        help="fold strata into binary groups first, e.g. '0=1,2,3;1=4'",
    )
    _add_format(p)
    p.set_defaults(func=_run_analyze)

    p = sub.add_parser("classify", help="classify the covariate of a parameterized model")
    _add_model_params(p)
    _add_format(p)
    p.set_defaults(func=_run_classify)

    p = sub.add_parser("verify", help="campaign-check one catalog clause")
    p.add_argument("--theorem", required=True, metavar="T", help="T1..T5")
    p.add_argument("--clause", required=True, metavar="C", help="a..e")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="default 1e-10 (0 when --exact)")
    p.add_argument("--exact", action="store_true", help="rational arithmetic campaign")
    p.add_argument("--threads", type=int, default=None)
    _add_format(p)
    p.set_defaults(func=_run_verify)

    p = sub.add_parser(
        "hypotheses", help="list the hypotheses, or evaluate them on a model"
    )
    _add_model_params(p, params_required=False)
    _add_format(p)
    p.set_defaults(func=_run_hypotheses)

    return parser


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def _add_model_params(p: argparse.ArgumentParser, params_required: bool = True) -> None:
    p.add_argument("--model", type=int, choices=(1, 2, 3), required=params_required)
    for name in _ALL_PARAM_FLAGS:
        p.add_argument(f"--{name}", metavar="P", default=None)
    p.add_argument(
        "--tol", type=float, default=None, help="default 1e-9 (0 when --exact)"
    )
    p.add_argument("--exact", action="store_true", help="parse parameters as exact rationals")


def _collect_params(parser, args, required: bool = True):
    given = {
        name: getattr(args, name)
        for name in _ALL_PARAM_FLAGS
        if getattr(args, name) is not None
    }
    if not given and not required:
        return None
    if args.model is None:
        parser.error("parameter flags need --model to be interpreted")
    needed = _MODEL_FIELDS[args.model]
    missing = [n for n in needed if n not in given]
    extra = sorted(set(given) - set(needed))
    if missing:
        parser.error(
            f"model {args.model} needs " + " ".join(f"--{n}" for n in missing)
        )
    if extra:
        parser.error(
            f"model {args.model} does not take " + " ".join(f"--{n}" for n in extra)
        )
    values = {}
    for name in needed:
        try:
            value = Fraction(given[name])
        except (ValueError, ZeroDivisionError):
            parser.error(f"--{name} {given[name]!r} is not a number")
        values[name] = value if args.exact else float(value)
    try:
        return params_type(args.model)(**values)
    except ConfoundKitError as exc:
        parser.error(str(exc))


def _resolved_tol(parser, args) -> object:
    if args.exact:
        if args.tol not in (None, 0):
            parser.error(f"--exact requires --tol 0, got {args.tol}")
        return 0
    return DEFAULT_FLOAT_TOL if args.tol is None else args.tol


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _run_analyze(parser, args) -> int:
    counts = load_counts(args.table)
    if args.coarsen:
        counts = coarsen(counts, CoarseningMap.from_spec(args.coarsen))
    report = analyze_counts(counts)
    _emit(args, report.to_dict(), report.render_text())
    return 0


def _hypothesis_rows(params, tol):
    joint = build_joint(params) if params is not None else None
    rows = []
    for h in Hypothesis:
        row = {"id": h.value, "statement": h.statement}
        if params is not None:
            row["algebraic"] = _maybe(holds_algebraic, params, h, tol)
            row["numeric"] = _maybe(holds_numeric, joint, h, tol)
        rows.append(row)
    return rows


def _maybe(check, subject, h, tol) -> Optional[bool]:
    try:
        return check(subject, h, tol)
    except DegenerateEventError:
        return None


def _render_hypothesis_rows(rows) -> str:
    have_values = "algebraic" in rows[0]
    header = ["id", "statement"] + (["algebraic", "numeric"] if have_values else [])
    table = [header]
    for row in rows:
        line = [row["id"], row["statement"]]
        if have_values:
            line += [_tri(row["algebraic"]), _tri(row["numeric"])]
        table.append(line)
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in table
    )


def _tri(value: Optional[bool]) -> str:
    return "undefined" if value is None else ("true" if value else "false")


def _run_classify(parser, args) -> int:
    params = _collect_params(parser, args)
    tol = _resolved_tol(parser, args)
    report = classify_covariate(build_joint(params), tol)
    rows = _hypothesis_rows(params, tol)
    payload = {
        "report": report.to_dict(),
        "hypotheses": {row["id"]: row["numeric"] for row in rows},
    }
    text = report.render_text() + "\n\n" + _render_hypothesis_rows(rows)
    _emit(args, payload, text)
    return 0


def _run_hypotheses(parser, args) -> int:
    params = _collect_params(parser, args, required=False)
    tol = _resolved_tol(parser, args)
    rows = _hypothesis_rows(params, tol)
    _emit(args, {"hypotheses": rows}, _render_hypothesis_rows(rows))
    return 0


def _run_verify(parser, args) -> int:
    try:
        clause = clause_lookup(args.theorem, args.clause)
    except ParameterError as exc:
        parser.error(str(exc))
    report = verify_clause(
        clause,
        samples=args.samples,
        seed=args.seed,
        tol=0 if args.exact and args.tol is None else args.tol,
        exact=args.exact,
        threads=args.threads,
    )
    lines = [
        ("theorem", clause.theorem),
        ("clause", clause.clause),
        ("model", str(clause.model)),
        ("conditions", ", ".join(sorted(h.value for h in clause.conditions))),
        ("conclusion", clause.conclusion.value),
        ("samples", str(report.samples)),
        ("seed", str(report.seed)),
        ("max_violation", _render_number(report.max_violation)),
        ("failures", str(report.failures)),
        ("result", "PASS" if report.passed else "FAIL"),
    ]
    width = max(len(k) for k, _ in lines)
    text = "\n".join(f"{k.ljust(width)}  {v}" for k, v in lines)
    _emit(args, report.to_dict(), text)
    return 0 if report.passed else 1


def _render_number(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ConfoundKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
