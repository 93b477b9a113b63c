"""Command line interface: ``lbcteach {gen,reduce,solve,verify,bench}``.

Exit codes: 0 success; 1 verification found a counterexample; 2 bad input or
unrealizable instance; 3 node budget exhausted (result still written).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .environments import (gen_diamond, gen_polygon_tower, gen_random_realizable,
                           reduce_set_cover)
from .errors import InstanceFormatError, NotRealizable, TeachingError
from .serialization import (dumps, load_cover_spec, load_instance, load_teaching_set,
                            save_instance)
from .tie import optimal_teach, verify_teaching_set

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _summary(inst) -> str:
    return f"|S|={inst.num_states} |A|={inst.num_actions} d={inst.d}"


def _generate(args):
    kind = args.kind
    if kind == "diamond":
        if args.n is None:
            raise UsageError("gen diamond needs --n")
        return gen_diamond(args.n)
    if kind == "tower":
        if args.n is None:
            raise UsageError("gen tower needs --n")
        return gen_polygon_tower(args.n)
    if kind == "random":
        return gen_random_realizable(args.d, args.states, args.actions, args.seed)
    if kind == "reduce":
        if not args.cover:
            raise UsageError("gen reduce needs --cover")
        return reduce_set_cover(load_cover_spec(args.cover))
    raise UsageError(f"unknown generator {kind!r}")


def cmd_gen(args) -> int:
    inst = _generate(args)
    save_instance(inst, args.out)
    print(f"wrote {args.out}: {_summary(inst)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    result = optimal_teach(inst, args.method, node_budget=args.node_budget)
    payload = dumps(result.to_dict())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    if args.json:
        print(payload)
    else:
        flag = "" if result.optimal or args.method == "greedy" else " (NOT optimal: node budget hit)"
        print(f"teaching set ({result.size}): {list(result.teaching_set)}{flag}")
        print(f"extreme rays: {len(result.extreme_rays)}")
    if args.method == "exact" and not result.optimal:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    teach = load_teaching_set(args.teaching_set)
    unknown = [s for s in teach if s not in inst.states]
    if unknown:
        raise InstanceFormatError(f"teaching set names unknown states {unknown}")
    res = verify_teaching_set(inst, teach, threads=args.threads)
    report = {"valid": True} if res else res.to_dict()
    payload = dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    print(payload)
    return EXIT_OK if res else EXIT_COUNTEREXAMPLE


def cmd_bench(args) -> int:
    if args.range is None:
        sizes = list(bench.DEFAULT_TOWER_SIZES if args.family == "tower"
                     else bench.DEFAULT_DIAMOND_SIZES)
    else:
        sizes = bench.parse_sizes(args.range)
    records = bench.run_bench(args.family, sizes, args.trials, args.seed,
                              args.exact, args.node_budget)
    bench.write_csv(records, args.csv)
    bench.write_plot_data(records, bench.plot_data_path(args.csv))
    failed = sum(1 for r in records if r.error)
    print(f"wrote {len(records)} rows to {args.csv} ({failed} failed)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--node-budget", type=int, default=10**7)

    p = argparse.ArgumentParser(prog="lbcteach", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an instance JSON file")
    g.add_argument("kind", choices=["diamond", "tower", "random", "reduce"])
    g.add_argument("--n", type=int)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--states", type=int, default=5)
    g.add_argument("--actions", type=int, default=3)
    g.add_argument("--cover", help="set cover JSON (for 'reduce')")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("reduce", parents=[common], help="alias of 'gen reduce'")
    r.add_argument("--cover", required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_gen, kind="reduce", n=None)

    s = sub.add_parser("solve", parents=[common], help="compute a teaching set")
    s.add_argument("instance")
    s.add_argument("--method", choices=["greedy", "exact"], default="exact")
    s.add_argument("--out")
    s.add_argument("--json", action="store_true", help="print only the result JSON")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a teaching set")
    v.add_argument("instance")
    v.add_argument("teaching_set")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[common], help="benchmark sweep to CSV")
    b.add_argument("--family", choices=["diamond", "tower"], required=True)
    b.add_argument("--range", help="sizes, e.g. 3..8 or 3,4,12 "
                   "(default: 3..8,12,16,20,24,32,44 for tower, 1..6 for diamond)")
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--csv", required=True)
    b.add_argument("--exact", action=argparse.BooleanOptionalAction, default=None,
                   help="force exact cover on/off (default: on for n < 12)")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotRealizable as exc:
        print(f"error: instance is not realizable: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, InstanceFormatError, OSError, json.JSONDecodeError,
            ValueError, TeachingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
