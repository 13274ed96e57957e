"""Command-line interface.

Subcommands:
    analyze     full report for one germ
    invariants  stable counts (S, K, T, W) and the four colengths
    frontalise  detect a fold germ and print its frontalisation
    classify    match against the simple frontal families
    curve       parametrized plane-curve invariants
    corpus      batch-run a JSONL corpus file and check expectations

Exit codes: 0 success, 2 expectation mismatch, 3 parse error,
4 cap-undetermined results present.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curves import CurveError, ParamCurve, curve_double_point, curve_milnor, delta_invariant, kappa_and_relation
from .folds import detect_fold, fold_codim, frontalise
from .germs import MapGerm
from .parsing import ParseError, parse_expression, render
from .report import AnalyzeOptions, GermSpec, Report, check_expectations, run_analyze

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_PARSE = 3
EXIT_UNDETERMINED = 4


def _options(args) -> AnalyzeOptions:
    return AnalyzeOptions(max_jet=args.max_jet, reading=args.reading)


def _emit(obj, args):
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        _emit_text(obj)


def _emit_text(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _emit_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            _emit_text(v, indent)
    else:
        print(f"{pad}{obj}")


def _cmd_analyze(args) -> int:
    spec = GermSpec(name=args.name, p=args.p, q=args.q)
    report = run_analyze(spec, _options(args))
    _emit(report.to_json_dict(), args)
    return EXIT_UNDETERMINED if report.has_undetermined() else EXIT_OK


def _cmd_invariants(args) -> int:
    spec = GermSpec(name=args.name, p=args.p, q=args.q)
    report = run_analyze(spec, _options(args))
    d = report.to_json_dict()
    slim = {
        "name": d["name"],
        "frontal": d.get("frontal"),
        "colengths": d.get("colengths"),
        "counts": d.get("counts"),
        "stages": d["stages"],
    }
    _emit(slim, args)
    return EXIT_UNDETERMINED if report.has_undetermined() else EXIT_OK


def _cmd_frontalise(args) -> int:
    germ = MapGerm(parse_expression(args.p), parse_expression(args.q), args.name)
    fold = detect_fold(germ)
    if fold is None:
        _emit({"name": args.name, "is_fold": False}, args)
        return EXIT_OK
    out = {
        "name": args.name,
        "is_fold": True,
        "frontalised_input": fold.frontalised,
        "h": render(fold.h),
        "codim": fold_codim(fold, cap=args.max_jet),
    }
    if not fold.frontalised:
        result = frontalise(fold)
        out["frontalisation"] = {"p": render(result.p), "q": render(result.q)}
    _emit(out, args)
    return EXIT_OK


def _cmd_classify(args) -> int:
    from .folds import classify_simple

    germ = MapGerm(parse_expression(args.p), parse_expression(args.q), args.name)
    label = classify_simple(germ)
    _emit(
        {
            "name": args.name,
            "classification": label.label if label else "unclassified",
            "convention": label.convention if label else None,
        },
        args,
    )
    return EXIT_OK


def _cmd_curve(args) -> int:
    p = parse_expression(args.p, vars=("t",))
    q = parse_expression(args.q, vars=("t",))
    curve = ParamCurve(p=p, q=q, name=args.name)
    out = {"name": args.name, "p": args.p, "q": args.q}
    try:
        d = curve_double_point(curve)
        out["double_point_function"] = render(d)
        out["delta"] = delta_invariant(curve)
        out["mu"] = curve_milnor(curve)
        rel = kappa_and_relation(curve)
        out["kappa"] = rel.kappa
        out["mu_I"] = rel.mu_I
        out["mu_F"] = rel.mu_F
        out["kappa_model"] = rel.model_assumption
    except CurveError as exc:
        out["error"] = str(exc)
    _emit(out, args)
    return EXIT_OK


def _run_one(item) -> tuple:
    spec, options = item
    report = run_analyze(spec, options)
    mismatches = check_expectations(report, spec.expect)
    return report, mismatches


def _cmd_corpus(args) -> int:
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.strip().startswith("#")]
        specs = []
        for i, ln in enumerate(lines, start=1):
            obj = json.loads(ln)
            specs.append(
                GermSpec(
                    name=obj["name"],
                    p=obj["p"],
                    q=obj["q"],
                    expect=obj.get("expect", {}),
                )
            )
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"corpus error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    options = _options(args)
    items = [(s, options) for s in specs]
    results = []
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, items))
    else:
        results = [_run_one(it) for it in items]

    all_mismatches = []
    any_undetermined = False
    parse_failures = 0
    for report, mismatches in results:
        all_mismatches.extend(mismatches)
        any_undetermined = any_undetermined or report.has_undetermined()
        blob = report.to_json_dict()
        if not args.timing:
            blob.pop("timing_ms", None)
        if args.format == "json":
            print(json.dumps(blob, sort_keys=False))
        else:
            counts = blob.get("counts")
            status = "ok" if not mismatches else "MISMATCH"
            print(f"{report.name:28s} frontal={blob.get('frontal')} counts={counts} {status}")
    for m in all_mismatches:
        print(f"mismatch: {m}", file=sys.stderr)
    if all_mismatches:
        return EXIT_MISMATCH
    if any_undetermined:
        return EXIT_UNDETERMINED
    return EXIT_OK


def _add_common(sub):
    sub.add_argument("--max-jet", type=int, default=40, help="jet cap for series computations")
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument(
        "--reading",
        choices=("dplus", "full", "both"),
        default="both",
        help="which reading of the double-point curve to evaluate",
    )


def _add_germ_args(sub):
    sub.add_argument("-p", required=True, help="second component p(x, y)")
    sub.add_argument("-q", required=True, help="third component q(x, y)")
    sub.add_argument("--name", default="germ")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frontals", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    for cmd, fn in (
        ("analyze", _cmd_analyze),
        ("invariants", _cmd_invariants),
        ("frontalise", _cmd_frontalise),
        ("classify", _cmd_classify),
    ):
        s = sub.add_parser(cmd)
        _add_germ_args(s)
        _add_common(s)
        s.set_defaults(fn=fn)

    s = sub.add_parser("curve")
    s.add_argument("-p", required=True, help="first component p(t)")
    s.add_argument("-q", required=True, help="second component q(t)")
    s.add_argument("--name", default="curve")
    _add_common(s)
    s.set_defaults(fn=_cmd_curve)

    s = sub.add_parser("corpus")
    s.add_argument("path", help="JSONL corpus file: {name, p, q, expect:{...}} per line")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="keep timing fields in the output")
    _add_common(s)
    s.set_defaults(fn=_cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
