"""Command-line entry point.

Subcommands: verify, construct, bounds, encode, solve, search, tables.
Exit codes: 0 ok, 1 verification failure / unsat, 2 usage error,
3 resource exhausted / unknown.
"""

from __future__ import annotations

import argparse
import json
import sys

from cubevis import __version__
from cubevis.constructions import bounds_for, code_total_set, known_values, layer_pair_set
from cubevis.cube import VertexSet, vertex_to_text
from cubevis.encode import (
    EncodeConfig,
    decode_model,
    emit_cnf,
    emit_ilp,
    parse_dimacs,
)
from cubevis.sat import default_solver_cmd, dpll_solve, external_solve
from cubevis.search import exact_number, heuristic_search, two_phase_search
from cubevis.visibility import Variant, verify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

VARIANTS = ("mutual", "total", "outer", "dual")


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubevis",
        description="Mutual-visibility sets in hypercubes",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a set file against a variant")
    p.add_argument("--variant", required=True, choices=VARIANTS)
    p.add_argument("--set", dest="set_file", required=True)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--max-distance", type=int, default=None)
    p.add_argument("--all-witnesses", action="store_true")

    p = sub.add_parser("construct", help="write a constructed set file")
    p.add_argument(
        "--kind",
        required=True,
        choices=("layer", "layer-pair", "code-total"),
    )
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--i", type=int, default=None, help="layer index")
    p.add_argument("--gap", type=int, default=3)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bounds", help="known bounds for a visibility number")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--variant", required=True, choices=VARIANTS)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("encode", help="emit a DIMACS or LP model")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--variant", required=True, choices=VARIANTS)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--path-cap", type=int, default=None)
    p.add_argument("--format", required=True, choices=("dimacs", "lp"))
    p.add_argument("--out", default=None, help="default: stdout")
    p.add_argument("--preset-file", default=None)
    p.add_argument(
        "--forbid",
        action="append",
        default=[],
        choices=("adjacent-pair", "k12-star"),
    )
    p.add_argument("--neighborhood-cap", type=int, default=None)
    p.add_argument("--antipode-closure", action="store_true")
    p.add_argument(
        "--no-reverse-clauses",
        action="store_true",
        help="emit only the forward path-variable implications",
    )

    p = sub.add_parser("solve", help="solve a DIMACS file")
    p.add_argument("--cnf", required=True)
    p.add_argument("--solver", default=None, help='external command, e.g. "kissat {cnf}"')
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--out", default=None, help="write the decoded set here when sat")

    p = sub.add_parser("search", help="search for large visibility sets")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--variant", required=True, choices=VARIANTS)
    p.add_argument("--mode", required=True, choices=("exact", "two-phase", "heuristic"))
    p.add_argument("--pattern", default="k12-star", choices=("adjacent-pair", "k12-star"))
    p.add_argument("--seeds", default="preset-layers", choices=("preset-layers", "antipode"))
    p.add_argument("--path-cap", type=int, default=None)
    p.add_argument("--solver", default=None)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("tables", help="print the embedded known-value tables")
    p.add_argument(
        "--which", default="all", choices=("all", "mutual", "total", "outer", "dual")
    )
    return parser


def _load_set(path: str, h: int | None) -> VertexSet:
    try:
        return VertexSet.load(path, h)
    except OSError as exc:
        raise UsageError(f"cannot read set file: {exc}") from exc


def _cmd_verify(args, out) -> int:
    M = _load_set(args.set_file, args.h)
    variant = Variant(args.variant, args.max_distance)
    verdict = verify(M, variant, all_witnesses=args.all_witnesses)
    if verdict.ok:
        note = "" if verdict.certified else " (relaxed distance: non-certificate)"
        print(f"ok: {len(M)} vertices pass {args.variant}{note}", file=out)
        return EXIT_OK
    witnesses = verdict.all_witnesses if args.all_witnesses else (verdict.witness,)
    for u, v in witnesses:
        print(
            f"fail {args.variant}: pair {vertex_to_text(M.h, u)} "
            f"{vertex_to_text(M.h, v)} has no free shortest path",
            file=out,
        )
    return EXIT_FAIL


def _cmd_construct(args, out) -> int:
    if args.kind == "code-total":
        M = code_total_set(args.h)
    else:
        if args.i is None:
            raise UsageError("--i is required for layer constructions")
        gap = 0 if args.kind == "layer" else args.gap
        M = layer_pair_set(args.h, args.i, gap)
    M.save(args.out)
    print(f"wrote {len(M)} vertices to {args.out}", file=out)
    return EXIT_OK


def _cmd_bounds(args, out) -> int:
    b = bounds_for(args.h, args.variant)
    if args.json:
        print(
            json.dumps(
                {
                    "h": args.h,
                    "variant": args.variant,
                    "lower": b.lower,
                    "upper": b.upper,
                    "exact": b.exact,
                    "provenance": b.provenance,
                }
            ),
            file=out,
        )
    elif b.exact is not None:
        print(f"exact {b.exact} ({b.provenance})", file=out)
    else:
        print(f"lower {b.lower} upper {b.upper} ({b.provenance})", file=out)
    return EXIT_OK


def _cmd_encode(args, out) -> int:
    presets = _load_set(args.preset_file, args.h) if args.preset_file else None
    if args.format == "dimacs" and args.ell is None:
        raise UsageError("--ell is required for DIMACS output")
    config = EncodeConfig(
        h=args.h,
        variant=args.variant,
        ell=args.ell,
        path_cap=args.path_cap,
        presets=presets,
        forbidden_patterns=tuple(args.forbid),
        neighborhood_cap=args.neighborhood_cap,
        antipode_closure=args.antipode_closure,
        reverse_clauses=not args.no_reverse_clauses,
    )
    text = (
        emit_cnf(config).to_dimacs()
        if args.format == "dimacs"
        else emit_ilp(config).to_lp()
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        print(f"wrote {args.out}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_solve(args, out) -> int:
    try:
        with open(args.cnf, encoding="utf-8") as f:
            formula = parse_dimacs(f.read())
    except OSError as exc:
        raise UsageError(f"cannot read CNF: {exc}") from exc
    solver = args.solver or default_solver_cmd()
    if solver:
        outcome = external_solve(formula, solver, time_budget=args.budget_seconds)
    else:
        outcome = dpll_solve(formula, time_budget=args.budget_seconds)
    print(f"s {outcome.status.upper()}", file=out)
    if outcome.is_sat and formula.vertex_vars:
        M = decode_model(formula, outcome.assignment)
        for v in M:
            print(vertex_to_text(M.h, v), file=out)
        if args.out:
            M.save(args.out)
    if outcome.is_sat:
        return EXIT_OK
    return EXIT_FAIL if outcome.is_unsat else EXIT_UNKNOWN


def _cmd_search(args, out) -> int:
    solver = args.solver or default_solver_cmd()
    if args.mode == "exact":
        result = exact_number(
            args.h, args.variant, solver_cmd=solver, budget_seconds=args.budget_seconds
        )
    elif args.mode == "two-phase":
        result = two_phase_search(
            args.h,
            args.variant,
            args.pattern,
            solver_cmd=solver,
            budget_seconds=args.budget_seconds,
        )
    else:
        result = heuristic_search(
            args.h,
            args.variant,
            seeds=args.seeds,
            path_cap=args.path_cap,
            solver_cmd=solver,
            budget_seconds=args.budget_seconds or 0.0,
        )
    if args.out:
        result.best_set.save(args.out)
        with open(args.out + ".meta", "w", encoding="utf-8", newline="\n") as f:
            f.write("\n".join(result.metadata_lines()) + "\n")
    if args.json:
        print(
            json.dumps(
                {
                    "h": result.h,
                    "variant": result.variant,
                    "size": result.size,
                    "status": result.status,
                    "elapsed_ms": int(result.elapsed * 1000),
                }
            ),
            file=out,
        )
    else:
        for line in result.metadata_lines():
            print(line, file=out)
    return EXIT_OK if result.status == "optimal" else EXIT_UNKNOWN


def _cmd_tables(args, out) -> int:
    table = known_values()
    kinds = VARIANTS if args.which == "all" else (args.which,)
    for kind in kinds:
        source = "Table 2" if kind == "total" else "Table 1"
        for h in sorted(table[kind]):
            lo, hi = table[kind][h]
            value = str(lo) if lo == hi else f"{lo}-{hi}"
            print(f"{kind} h={h} {value} {source}", file=out)
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "construct": _cmd_construct,
    "bounds": _cmd_bounds,
    "encode": _cmd_encode,
    "solve": _cmd_solve,
    "search": _cmd_search,
    "tables": _cmd_tables,
}


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
