"""Command-line front end: analyze, boundary, dirichlet, example, suite, verify."""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .audit import VersionMismatch, WitnessFailure, verify_report
from .boundary import choquet_boundary, dual_norm
from .core import (SCHEMA_VERSION, TOOL_VERSION, ChoquetLabError, InternalInconsistency,
                   jsonable, load_space, parse_scalar)
from .dirichlet import apply_D, apply_Dtilde, dilation, dirichlet_property_suite
from .gallery import EXAMPLE_NAMES, make_example
from .representation import CONDITIONS, condition_report
from . import suites

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_WITNESS = 0, 1, 2, 3


def _load(path, field_override=None):
    space = load_space(Path(path).read_text())
    if field_override and field_override != space.field:
        space = space.restrict_field(field_override)
    return space


def envelope(command, space=None, seed=None, phase_grid=None):
    doc = {"schema": SCHEMA_VERSION, "toolVersion": TOOL_VERSION, "command": command}
    if space is not None:
        doc["space"] = space.digest()
        doc["spaceDocument"] = space.to_document()
    if seed is not None:
        doc["seed"] = seed
    if phase_grid is not None:
        doc["phaseGrid"] = phase_grid
    return doc


def _emit(doc, out=None):
    text = json.dumps(jsonable(doc), indent=2, sort_keys=False)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_analyze(args):
    space = _load(args.space, args.field_override)
    conditions = tuple(c.strip() for c in args.conditions.split(",")) if args.conditions else CONDITIONS
    unknown = set(conditions) - set(CONDITIONS)
    if unknown:
        raise ValueError(f"unknown conditions {sorted(unknown)}")
    start = time.perf_counter()
    rep = condition_report(space, conditions, args.phase_grid, args.seed)
    doc = envelope("analyze", space, args.seed, args.phase_grid)
    doc["result"] = rep.to_json()
    doc["timing"] = {"total": time.perf_counter() - start, "boundary": rep.timing.get("boundary", 0.0)}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_boundary(args):
    space = _load(args.space, args.field_override)
    start = time.perf_counter()
    rep = choquet_boundary(space, args.phase_grid)
    doc = envelope("boundary", space, None, args.phase_grid)
    doc["result"] = {"boundary": rep.to_json(),
                     "norms": {x: dual_norm(space, space.row(x), args.phase_grid) for x in space.points}}
    doc["timing"] = {"total": time.perf_counter() - start}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_dirichlet(args):
    space = _load(args.space, args.field_override)
    start = time.perf_counter()
    pair = dilation(space)
    doc = envelope("dirichlet", space, args.seed)
    result = {"dirichlet": pair.to_json()}
    if args.apply:
        raw = json.loads(Path(args.apply).read_text())
        values = raw["values"] if isinstance(raw, dict) else raw
        if isinstance(raw, dict) and isinstance(values, dict):
            values = [values[x] for x in space.points]
        f = [parse_scalar(v) for v in values]
        result["apply"] = {"f": f, "Df": apply_D(pair, f), "Dtildef": apply_Dtilde(pair, f)}
    if args.suite:
        res = dirichlet_property_suite(space, args.seed)
        result["suite"] = res
    doc["result"] = result
    doc["timing"] = {"total": time.perf_counter() - start}
    _emit(doc, args.out)
    if args.suite and not result["suite"]["passed"]:
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_example(args):
    alpha = Fraction(args.alpha) if args.alpha is not None else None
    beta = Fraction(args.beta) if args.beta is not None else None
    space = make_example(args.name, args.grid, alpha, beta, args.seed)
    _emit(space.to_document(), args.out)
    return EXIT_OK


def cmd_suite(args):
    doc = envelope("suite", seed=args.seed)
    results = []
    if args.random:
        results.append(suites.random_implication_suite(args.random, args.seed, args.max_n, args.max_m,
                                                       dirichlet=args.dirichlet))
    if args.prubeh_sweep:
        results.append(suites.prubeh_sweep(limit=args.prubeh_sweep))
    if args.hustad:
        results.append(suites.hustad_suite(args.hustad, args.seed))
    if args.complex_sandwich:
        results.append(suites.complex_sandwich(args.complex_sandwich, args.seed))
    doc["result"] = {"suites": results}
    failed = [r for r in results if r["violations"]]
    if failed:
        target = Path(args.reproducer_dir)
        target.mkdir(parents=True, exist_ok=True)
        for r in failed:
            path = target / f"reproducer-{r['suite']}-seed{args.seed}.json"
            path.write_text(json.dumps(jsonable(r["violations"][0]), indent=2) + "\n")
            r["reproducer"] = str(path)
    _emit(doc, args.out)
    return EXIT_INTERNAL if failed else EXIT_OK


def cmd_verify(args):
    doc = json.loads(Path(args.report).read_text())
    summary = verify_report(doc)
    _emit({"schema": SCHEMA_VERSION, "toolVersion": TOOL_VERSION, "command": "verify",
           "result": summary}, args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="choquet-lab", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field-override", choices=("real", "complex"))
    common.add_argument("--phase-grid", type=int, default=64)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    common.add_argument("--json", action="store_true", help="JSON output (the default)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common])
    p.add_argument("space")
    p.add_argument("--conditions")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("boundary", parents=[common])
    p.add_argument("space")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("dirichlet", parents=[common])
    p.add_argument("space")
    p.add_argument("--suite", action="store_true")
    p.add_argument("--apply")
    p.set_defaults(func=cmd_dirichlet)

    p = sub.add_parser("example", parents=[common])
    p.add_argument("name", choices=EXAMPLE_NAMES)
    p.add_argument("--grid", type=int, default=4)
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("suite", parents=[common])
    p.add_argument("--random", type=int, default=0)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--dirichlet", action="store_true")
    p.add_argument("--prubeh-sweep", type=int, default=0)
    p.add_argument("--hustad", type=int, default=0)
    p.add_argument("--complex-sandwich", type=int, default=0)
    p.add_argument("--reproducer-dir", default=".")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(json.dumps({"error": "InternalInconsistency", "message": str(exc)}), file=sys.stderr)
        return EXIT_INTERNAL
    except (WitnessFailure, VersionMismatch) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_WITNESS
    except (ChoquetLabError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
