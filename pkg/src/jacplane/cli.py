"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when an internal cross-check
fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

from . import atlas
from .classify import prop_terao_nu
from .linalg import InputError, InternalError
from .poly import parse_poly
from .report import build_report, load_schema

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


def _seed(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("JACPLANE_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"JACPLANE_SEED must be an integer, got {env!r}") from None
    return None


def _report_kwargs(args) -> dict:
    return dict(
        seed=_seed(args),
        verify=args.verify,
        mu=args.mu,
        irreducible=args.irreducible,
        allow_nonreduced=args.allow_nonreduced,
        timing=args.timing,
    )


def _emit(data: dict, as_table: bool, out=None) -> None:
    out = out or sys.stdout
    if as_table:
        width = max(len(k) for k in data)
        for key, value in data.items():
            if isinstance(value, (dict, list)) and key in ("theorem_checks",):
                value = ", ".join(f"{c['name']}={'ok' if c['holds'] else 'FAIL'}" for c in value)
            out.write(f"{key.ljust(width)}  {value}\n")
    else:
        out.write(json.dumps(data, sort_keys=True) + "\n")


def _read_poly_arg(text: str) -> str:
    if text.startswith("@"):
        return Path(text[1:]).read_text(encoding="utf-8").strip()
    return text


def cmd_analyze(args) -> int:
    f = parse_poly(_read_poly_arg(args.poly))
    report = build_report(f, **_report_kwargs(args))
    _emit(report.to_dict(), args.table)
    return EXIT_OK


def _generate(args):
    family = args.family
    p = args.params
    expected = {"binomial": 2, "bplus": 1, "named": 1}[family]
    if len(p) != expected:
        raise InputError(f"family {family} takes {expected} parameter(s), got {len(p)}")
    if family == "named":
        return atlas.named_example(p[0])
    try:
        ints = [int(v) for v in p]
    except ValueError:
        raise InputError(f"parameters for {family} must be integers, got {p}") from None
    if family == "binomial":
        return atlas.binomial_curve(*ints)
    return atlas.b_plus_curve(*ints)


def cmd_generate(args) -> int:
    f = _generate(args)
    if not args.analyze:
        print(str(f))
        return EXIT_OK
    report = build_report(f, **_report_kwargs(args))
    _emit(report.to_dict(), args.table)
    return EXIT_OK


def _batch_item(text: str, kwargs: dict) -> dict:
    try:
        report = build_report(parse_poly(text), **kwargs)
        return {"report": report.to_dict()}
    except InputError as exc:
        return {"error": {"kind": "input", "message": str(exc)}}
    except InternalError as exc:
        return {"error": {"kind": "internal", "message": str(exc)}}


def read_batch(path: str) -> list[str]:
    items = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            items.append(body)
    return items


def run_batch(items: list[str], kwargs: dict, jobs: int = 1) -> list[dict]:
    worker = partial(_batch_item, kwargs=kwargs)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, items))
    else:
        results = [worker(t) for t in items]
    return [{"index": i, "input": text, **res} for i, (text, res) in enumerate(zip(items, results))]


def cmd_batch(args) -> int:
    items = read_batch(args.file)
    results = run_batch(items, _report_kwargs(args), jobs=args.jobs)
    internal = 0
    violations = 0
    errors = 0
    for row in results:
        sys.stdout.write(json.dumps(row, sort_keys=True) + "\n")
        if "error" in row:
            errors += 1
            internal += row["error"]["kind"] == "internal"
        else:
            violations += row["report"]["violations"]
    if results:
        summary = {"items": len(results), "errors": errors, "internal_errors": internal, "violations": violations}
        sys.stdout.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    return EXIT_INTERNAL if internal else EXIT_OK


def arrangement_summary(arr: atlas.Arrangement, kwargs: dict) -> dict:
    lattice = atlas.intersection_lattice(arr)
    tau_comb = atlas.combinatorial_tau(lattice)
    report = build_report(atlas.arrangement_poly(arr), **kwargs)
    d = len(arr)
    data = {
        "lines": [list(l) for l in arr.lines],
        "multiplicities": {str(m): c for m, c in sorted(lattice.multiplicities.items())},
        "tau_combinatorial": tau_comb,
        "tau_linalg": report.analysis.tau,
        "tau_agree": tau_comb == report.analysis.tau,
        "nu_low_tau": prop_terao_nu(d, tau_comb) if d >= 4 else None,
        "report": report.to_dict(),
    }
    return data


def cmd_arrangement(args) -> int:
    arr = atlas.read_arrangement(args.file)
    data = arrangement_summary(arr, _report_kwargs(args))
    _emit(data, args.table)
    return EXIT_OK if data["tau_agree"] else EXIT_INTERNAL


def cmd_conjecture(args) -> int:
    groups = atlas.read_groups(args.file)
    kwargs = _report_kwargs(args)
    report = atlas.conjecture_harness(groups, seed=kwargs["seed"], jobs=args.jobs)
    out = []
    for g in report.groups:
        out.append(
            {
                "multiplicities": {str(m): c for m, c in g.lattice_summary.items()},
                "tau_combinatorial": g.combinatorial_tau,
                "tau": [a.tau for a in g.analyses],
                "nu": list(g.nu_values),
                "mdr": list(g.mdr_values),
                "splitting_type": [None if s is None else [s.d1, s.d2] for s in g.splitting_types],
                "nu_constant": g.nu_constant,
                "mdr_constant": g.mdr_constant,
                "splitting_constant": g.splitting_constant,
                "counterexample": g.counterexample,
            }
        )
    _emit({"groups": out, "counterexamples": report.counterexamples}, False)
    if report.counterexamples:
        sys.stderr.write(f"COUNTEREXAMPLE: nu varies within groups {report.counterexamples}\n")
    return EXIT_OK


def cmd_schema(args) -> int:
    print(json.dumps(load_schema(), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for prime selection (env JACPLANE_SEED)")
    common.add_argument("--verify", dest="verify", action="store_true", default=None,
                        help="run both tau and both n(f) algorithms (default for d <= 16)")
    common.add_argument("--no-verify", dest="verify", action="store_false")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="table", action="store_false", default=False)
    fmt.add_argument("--table", dest="table", action="store_true")
    common.add_argument("--mu", type=int, default=None, help="total Milnor number, if known")
    common.add_argument("--irreducible", action="store_true", help="declare the curve irreducible")
    common.add_argument("--allow-nonreduced", action="store_true",
                        help="compute raw dimensions for non-reduced input")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in reports")

    parser = argparse.ArgumentParser(prog="jacplane", description="Jacobian syzygies and Tjurina numbers of plane curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyse one curve")
    p.add_argument("poly", help="polynomial text, or @file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", parents=[common], help="emit a curve from a family")
    p.add_argument("family", choices=["binomial", "bplus", "named"])
    p.add_argument("params", nargs="*")
    p.add_argument("--analyze", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("batch", parents=[common], help="analyse one polynomial per line")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("arrangement", parents=[common], help="analyse a line arrangement file")
    p.add_argument("file")
    p.set_defaults(func=cmd_arrangement)

    p = sub.add_parser("conjecture", parents=[common], help="nu-constancy harness over lattice classes")
    p.add_argument("file", help="JSON group file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("schema", help="print the report JSON schema")
    p.set_defaults(func=cmd_schema)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InternalError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
