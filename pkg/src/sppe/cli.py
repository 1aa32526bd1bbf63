"""Command-line front end: solve, verify, gen, bench, aggregate.

Exit codes: 0 success (or verification pass), 1 verification failure,
2 input error, 3 goods-limit guard, 4 internal bug.  All rationals in
JSON output are lowest-terms strings; dummy witnesses appear as null.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from fractions import Fraction

from .equilibrium import alpha_x_from_json
from .errors import GoodsLimitExceeded, NoEquilibriumFound, SppeError
from .model import Instance, partition_good_types, preprocess, validate_instance
from .solver import SolveConfig, solve_by_types_with_stats, solve_with_stats
from .verifier import verify_equilibrium

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_BUG = 4


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


def _fail(code: int, message: str) -> int:
    _emit({"error": message})
    return code


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_range(text: str) -> tuple[int, int]:
    for sep in ("..", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return int(lo), int(hi)
    raise ValueError(f"range {text!r} must look like LO..HI or LO:HI")


def _rand_rat(rng: random.Random, lo: int, hi: int, denominators=(1, 2, 3, 4)) -> Fraction:
    d = rng.choice(denominators)
    return Fraction(rng.randint(lo * d, hi * d), d)


def generate_instance(
    n: int,
    goods: int,
    seed: int,
    value_range: tuple[int, int] = (1, 100),
    budget_range: tuple[int, int] = (1, 50),
    types: int | None = None,
    m: int | None = None,
) -> Instance:
    """Deterministic random market; with ``types`` set, exactly that many
    distinct valuation columns are replicated across ``m`` goods."""
    rng = random.Random(seed)
    vlo, vhi = value_range
    blo, bhi = budget_range
    if vlo > vhi or blo > bhi or vlo < 0 or blo < 1:
        raise ValueError("empty or invalid value/budget range")
    if n < 1 or goods < 0:
        raise ValueError("need at least one buyer and a non-negative good count")

    if types is None:
        columns = [[_rand_rat(rng, vlo, vhi) for _ in range(n)] for _ in range(goods)]
        total = goods
        col_of_good = list(range(goods))
    else:
        if types < 1 or m is None or m < types:
            raise ValueError("--types needs 1 <= types <= m")
        columns = []
        seen = set()
        while len(columns) < types:
            col = [_rand_rat(rng, vlo, vhi) for _ in range(n)]
            key = tuple(col)
            if key in seen:
                continue
            seen.add(key)
            columns.append(col)
        total = m
        col_of_good = [g if g < types else rng.randrange(types) for g in range(m)]

    valuations = [[columns[col_of_good[j]][i] for j in range(total)] for i in range(n)]
    budgets = [_rand_rat(rng, blo, bhi, denominators=(1, 2)) for _ in range(n)]
    return validate_instance({"valuations": valuations, "budgets": budgets})


def _solve_payload(inst: Instance, args) -> tuple[dict, int]:
    cfg = SolveConfig(max_goods=args.max_goods, parallel=args.parallel)
    if args.by_types:
        eq, stats = solve_by_types_with_stats(inst, cfg)
    else:
        eq, stats = solve_with_stats(inst, cfg)

    if not args.skip_verify:
        report = verify_equilibrium(inst, eq.alpha, eq.x)
        if not report.passed:
            return {"error": "solver output failed verification (bug)"}, EXIT_BUG

    removed = list(preprocess(inst).removed_goods)
    payload = eq.to_json_dict()
    payload["meta"] = {
        "removed_goods": removed,
        "removed_goods_convention": "zero allocation and zero price",
    }
    if not args.quiet:
        payload["stats"] = stats.to_json_dict()
    return payload, EXIT_OK


def cmd_solve(args) -> int:
    try:
        inst = validate_instance(_load_json(args.instance))
    except (OSError, ValueError, TypeError, KeyError, SppeError) as exc:
        return _fail(EXIT_INPUT, f"bad instance: {exc}")
    try:
        payload, code = _solve_payload(inst, args)
    except GoodsLimitExceeded as exc:
        return _fail(EXIT_GUARD, str(exc))
    except (NoEquilibriumFound, SppeError) as exc:
        return _fail(EXIT_BUG, str(exc))
    _emit(payload)
    return code


def cmd_verify(args) -> int:
    try:
        inst = validate_instance(_load_json(args.instance))
        alpha, x = alpha_x_from_json(_load_json(args.equilibrium))
    except (OSError, ValueError, TypeError, KeyError, SppeError) as exc:
        return _fail(EXIT_INPUT, f"bad input: {exc}")
    report = verify_equilibrium(inst, alpha, x)
    _emit(report.to_json_dict())
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_gen(args) -> int:
    try:
        inst = generate_instance(
            n=args.buyers,
            goods=args.goods if args.types is None else 0,
            seed=args.seed,
            value_range=_parse_range(args.value_range),
            budget_range=_parse_range(args.budget_range),
            types=args.types,
            m=args.m,
        )
    except (ValueError, SppeError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    _emit(inst.to_json_dict())
    return EXIT_OK


def cmd_bench(args) -> int:
    ns = [int(v) for v in args.buyers.split(",")]
    cs = [int(v) for v in args.goods.split(",")]
    cfg = SolveConfig(max_goods=args.max_goods, parallel=args.parallel)
    writer = csv.writer(sys.stdout)
    writer.writerow(
        [
            "n", "c", "seed", "states_enumerated", "states_consistent",
            "cells_with_nonempty_witness_sets", "witness_tuples_tried",
            "lps_solved", "lps_feasible", "wall_time_ms",
            "winning_state_index", "winning_tuple", "status",
        ]
    )
    for c in cs:
        for n in ns:
            for seed in range(1, args.seeds + 1):
                inst = generate_instance(
                    n=n, goods=c, seed=seed,
                    value_range=_parse_range(args.value_range),
                    budget_range=_parse_range(args.budget_range),
                )
                try:
                    _, stats = solve_with_stats(inst, cfg)
                    status = "ok"
                except SppeError as exc:
                    stats = None
                    status = f"error: {exc}"
                if stats is None:
                    writer.writerow([n, c, seed] + [""] * 9 + [status])
                else:
                    s = stats.to_json_dict()
                    writer.writerow(
                        [
                            n, c, seed,
                            s["states_enumerated"], s["states_consistent"],
                            s["cells_with_nonempty_witness_sets"],
                            s["witness_tuples_tried"], s["lps_solved"],
                            s["lps_feasible"], s["wall_time_ms"],
                            s["winning_state_index"], json.dumps(s["winning_tuple"]),
                            status,
                        ]
                    )
    return EXIT_OK


def cmd_aggregate(args) -> int:
    try:
        inst = validate_instance(_load_json(args.instance))
    except (OSError, ValueError, TypeError, KeyError, SppeError) as exc:
        return _fail(EXIT_INPUT, f"bad instance: {exc}")
    part = partition_good_types(inst)
    _emit(
        {
            "num_types": len(part.types),
            "types": [list(group) for group in part.types],
            "aggregated": part.aggregated.to_json_dict(),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sppe",
        description="Exact second-price pacing equilibria: solve, verify, generate, benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file and print the equilibrium")
    p_solve.add_argument("instance")
    p_solve.add_argument("--by-types", action="store_true", help="aggregate identical goods first")
    p_solve.add_argument("--max-goods", type=int, default=4)
    p_solve.add_argument("--parallel", type=int, default=1)
    p_solve.add_argument("--skip-verify", action="store_true")
    p_solve.add_argument("--quiet", action="store_true", help="omit run statistics from output")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check an equilibrium file against an instance")
    p_verify.add_argument("instance")
    p_verify.add_argument("equilibrium")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a deterministic random instance")
    p_gen.add_argument("--buyers", "-n", type=int, required=True)
    p_gen.add_argument("--goods", "-c", type=int, default=2)
    p_gen.add_argument("--types", type=int, default=None,
                       help="number of distinct valuation columns (with --m total goods)")
    p_gen.add_argument("--m", type=int, default=None)
    p_gen.add_argument("--seed", type=int, default=1)
    p_gen.add_argument("--value-range", default="1..100")
    p_gen.add_argument("--budget-range", default="1..50")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="CSV of run statistics over a size grid")
    p_bench.add_argument("--buyers", "-n", default="10,20,40", help="comma-separated buyer counts")
    p_bench.add_argument("--goods", "-c", default="2", help="comma-separated good counts")
    p_bench.add_argument("--seeds", type=int, default=1, help="seeds 1..K per size")
    p_bench.add_argument("--value-range", default="1..100")
    p_bench.add_argument("--budget-range", default="1..50")
    p_bench.add_argument("--max-goods", type=int, default=4)
    p_bench.add_argument("--parallel", type=int, default=1)
    p_bench.set_defaults(func=cmd_bench)

    p_agg = sub.add_parser("aggregate", help="print the good-type partition of an instance")
    p_agg.add_argument("instance")
    p_agg.set_defaults(func=cmd_aggregate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
