"""Command-line front end: ``respectcut {mincut,bench,generate}``."""

from __future__ import annotations

import argparse
import csv
import sys
import time
from collections.abc import Sequence

from .baselines import (
    brute_force_min_cut,
    contraction_min_cut,
    default_contraction_trials,
    stoer_wagner,
)
from .generators import FAMILIES, generate
from .graph import CutResult, Graph, GraphError, format_graph, parse_graph
from .respect import min_cut
from .sampler import SamplerConfig, SamplerError

ALGORITHMS = ("respect", "stoer-wagner", "contraction", "brute")
CSV_HEADER = ("n", "m", "algorithm", "seed", "value", "millis", "agg_ops")


def format_value(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def run_algorithm(
    g: Graph,
    algorithm: str,
    *,
    seed: int = 0,
    d: float = 2.0,
    trees: int | None = None,
    trials: int | None = None,
    parallel: bool = False,
) -> CutResult:
    if algorithm == "respect":
        return min_cut(g, SamplerConfig(d=d, seed=seed, trees=trees), parallel=parallel)
    if algorithm == "stoer-wagner":
        return stoer_wagner(g)
    if algorithm == "contraction":
        return contraction_min_cut(g, trials or default_contraction_trials(g.n), seed)
    if algorithm == "brute":
        return brute_force_min_cut(g)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _read_graph(path: str) -> Graph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def cmd_mincut(args: argparse.Namespace) -> int:
    g = _read_graph(args.file)
    res = run_algorithm(
        g,
        args.algorithm,
        seed=args.seed,
        d=args.d,
        trees=args.trees,
        trials=args.trials,
        parallel=args.parallel,
    )
    out = [f"value {format_value(res.value)}"]
    if args.emit_partition:
        side = [x + 1 for x in res.side_vertices()]
        out.append("side " + " ".join(map(str, side)))
        for e in res.crossing:
            out.append(f"crossing {g.u[e] + 1} {g.v[e] + 1} {format_value(g.w[e])}")
    print("\n".join(out))
    return 0


def _sizes(lo: int, hi: int) -> list[int]:
    sizes = []
    n = lo
    while n <= hi:
        sizes.append(n)
        n *= 2
    return sizes


def cmd_bench(args: argparse.Namespace) -> int:
    if args.family not in FAMILIES:
        raise GraphError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    algorithms = args.algorithms.split(",")
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for n in _sizes(args.n, args.n_max or args.n):
        for seed in range(args.seed, args.seed + args.seeds):
            m = None if args.p is not None else min(args.m_per_n * n, n * (n - 1) // 2)
            g, _ = generate(
                args.family, n, p=args.p, m=m, weights=args.weights, seed=seed,
                bridges=args.bridges,
            )
            for alg in algorithms:
                start = time.perf_counter()
                res = run_algorithm(
                    g, alg, seed=seed, d=args.d, trees=args.trees, trials=args.trials
                )
                millis = (time.perf_counter() - start) * 1000.0
                ops = res.meta.get("agg_ops", "")
                writer.writerow(
                    (g.n, g.m, alg, seed, format_value(res.value), f"{millis:.3f}", ops)
                )
            sys.stdout.flush()
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    g, notes = generate(
        args.family,
        args.n,
        p=args.p,
        m=args.m,
        weights=args.weights,
        seed=args.seed,
        bridges=args.bridges,
        bridge_weight=args.bridge_weight,
        cols=args.cols,
    )
    sys.stdout.write(format_graph(g, notes))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="respectcut", description="Exact global minimum cut.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mincut", help="minimum cut of a graph file")
    p.add_argument("file", help="graph file, or - for stdin")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="respect")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=float, default=2.0, help="failure probability exponent")
    p.add_argument("--trees", type=int, default=None, help="override the number of trees")
    p.add_argument("--trials", type=int, default=None, help="contraction trials")
    p.add_argument("--emit-partition", action="store_true")
    p.add_argument("--parallel", action="store_true", help="scan trees on a thread pool")
    p.set_defaults(func=cmd_mincut)

    b = sub.add_parser("bench", help="CSV benchmark over a generated family")
    b.add_argument("--family", default="random")
    b.add_argument("--n", type=int, required=True, help="smallest size")
    b.add_argument("--n-max", type=int, default=None, help="largest size (doubling from --n)")
    b.add_argument("--p", type=float, default=None)
    b.add_argument("--m-per-n", type=int, default=4, help="edges per vertex when --p is unset")
    b.add_argument("--weights", default="1:1")
    b.add_argument("--bridges", type=int, default=1)
    b.add_argument("--seed", type=int, default=0, help="first seed")
    b.add_argument("--seeds", type=int, default=1, help="number of seeds")
    b.add_argument("--algorithms", default="respect,stoer-wagner")
    b.add_argument("--d", type=float, default=2.0)
    b.add_argument("--trees", type=int, default=None)
    b.add_argument("--trials", type=int, default=None)
    b.set_defaults(func=cmd_bench)

    gen = sub.add_parser("generate", help="write a generated graph to stdout")
    gen.add_argument("--family", required=True)
    gen.add_argument("--n", type=int, required=True, help="vertices (clique size k, grid rows)")
    gen.add_argument("--p", type=float, default=None)
    gen.add_argument("--m", type=int, default=None)
    gen.add_argument("--weights", default="1:1")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--bridges", type=int, default=1)
    gen.add_argument("--bridge-weight", type=float, default=1.0)
    gen.add_argument("--cols", type=int, default=None)
    gen.set_defaults(func=cmd_generate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, SamplerError) as exc:
        print(f"respectcut: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
