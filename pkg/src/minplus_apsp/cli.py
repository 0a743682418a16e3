"""Command-line front end: solve, bench, check, gen."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import matio
from .codec import DecodeError, FeasibilityError, precision_limits
from .graph import GraphFormatError, parse_edge_list, to_distance_matrix
from .kernels import KernelChoice
from .netgen import GenSpec, diameter, estimate_diameter, generate_scale_free
from .solver import (
    SolveOptions,
    converged,
    epoch_stats_csv,
    fixed_squaring,
    floyd_warshall,
    power_law_bound,
)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="minplus-apsp",
        description="All-pairs shortest paths via exponentially encoded "
        "matrix products with repeated squaring.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve APSP for an edge-list file")
    solve.add_argument("input", help="edge-list file")
    solve.add_argument("-o", "--output", help="distance matrix output path (default: stdout)")
    solve.add_argument("--directed", action="store_true", help="treat edges as directed")
    solve.add_argument("--width", type=int, choices=(32, 64), default=64)
    solve.add_argument("--block", type=int, default=64, help="dense block edge")
    solve.add_argument(
        "--sparse-threshold", type=float, default=None, help="density cutoff for the sparse kernel"
    )
    solve.add_argument(
        "--kernel",
        choices=("auto", "naive", "blocked", "strassen", "sparse"),
        default="auto",
    )
    solve.add_argument("--diameter", type=int, default=None, help="diameter hint for the loop bound")
    solve.add_argument(
        "--trust-diameter",
        action="store_true",
        help="skip the confirming epoch once the hint is covered",
    )
    solve.add_argument("--oracle", action="store_true", help="cross-check against Floyd-Warshall")
    solve.add_argument("--format", choices=("csv", "bin"), default="csv")
    solve.add_argument("--heatmap", metavar="PATH", help="write a grayscale PGM of the result")
    solve.add_argument("--stats", metavar="PATH", help="write per-epoch statistics CSV")
    solve.add_argument(
        "--unsafe-precision",
        action="store_true",
        help="skip the overflow feasibility guard (decode may fail instead)",
    )

    bench = sub.add_parser("bench", help="time the solver variants on one graph")
    bench.add_argument("input", nargs="?", help="edge-list file (omit to generate)")
    bench.add_argument("--n", type=int, default=512, help="generated graph size")
    bench.add_argument("--m-attach", type=int, default=3)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--directed", action="store_true")
    bench.add_argument("--block", type=int, default=64)
    bench.add_argument("--sparse-threshold", type=float, default=0.10)
    bench.add_argument("-o", "--output", help="CSV output path (default: stdout)")

    check = sub.add_parser("check", help="print precision limits for a node count")
    check.add_argument("n", type=int)

    gen = sub.add_parser("gen", help="generate a scale-free edge list")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m-attach", type=int, default=2)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", help="edge-list output path (default: stdout)")
    gen.add_argument("--solve", action="store_true", help="also solve and report the diameter")

    return p


def _solve_options(args) -> SolveOptions:
    if args.kernel != "auto" and args.sparse_threshold is not None:
        raise SystemExit(
            "error: --sparse-threshold only applies with --kernel auto "
            "(kernel override conflicts with auto-selection)"
        )
    choice = KernelChoice(
        threshold=args.sparse_threshold if args.sparse_threshold is not None else 0.10,
        block=args.block,
    )
    return SolveOptions(
        width=args.width,
        kernel_choice=choice,
        kernel=args.kernel,
        diameter_hint=args.diameter,
        trust_hint=args.trust_diameter,
        enforce_precision=not args.unsafe_precision,
    )


def cmd_solve(args) -> int:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1
    try:
        graph = parse_edge_list(text, directed=args.directed)
        w = to_distance_matrix(graph)
        opts = _solve_options(args)
        start = time.perf_counter()
        result = power_law_bound(w, opts)
        elapsed = time.perf_counter() - start
    except (GraphFormatError, FeasibilityError, DecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.format == "bin":
        if not args.output:
            print("error: --format bin requires --output", file=sys.stderr)
            return 1
        matio.write_distance_binary(result.distances, args.output)
    elif args.output:
        matio.write_distance_csv(result.distances, args.output)
    else:
        sys.stdout.write(matio.distance_csv(result.distances))

    if args.stats:
        Path(args.stats).write_text(epoch_stats_csv(result.epochs))
    if args.heatmap:
        matio.write_heatmap_pgm(result.distances, args.heatmap)

    print(
        f"n={graph.n} edges={len(graph.edges)} epochs={len(result.epochs)} "
        f"converged={result.converged} kernels={','.join(result.kernel_trace)} "
        f"wall={elapsed:.3f}s"
    )
    if not result.converged:
        print("error: did not converge within the epoch budget", file=sys.stderr)
        return 1
    if args.oracle:
        reference = floyd_warshall(w)
        if converged(result.distances, reference):
            print("MATCH")
        else:
            print("MISMATCH")
            return 1
    return 0


def cmd_bench(args) -> int:
    if args.input:
        graph = parse_edge_list(Path(args.input).read_text(), directed=args.directed)
    else:
        graph = generate_scale_free(GenSpec(n=args.n, m_attach=args.m_attach, seed=args.seed))
    w = to_distance_matrix(graph)
    choice = KernelChoice(threshold=args.sparse_threshold, block=args.block)
    rows = []

    start = time.perf_counter()
    floyd_warshall(w)
    rows.append(("floyd_warshall", "-", time.perf_counter() - start))

    start = time.perf_counter()
    _, iters = fixed_squaring(w, SolveOptions(kernel_choice=choice))
    rows.append(("fixed_squaring", str(iters), time.perf_counter() - start))

    for kernel in ("auto", "blocked", "sparse", "naive", "strassen"):
        start = time.perf_counter()
        result = power_law_bound(w, SolveOptions(kernel_choice=choice, kernel=kernel))
        rows.append(
            (f"power_law_bound[{kernel}]", str(len(result.epochs)), time.perf_counter() - start)
        )

    out = "algorithm,iterations,seconds\n" + "".join(
        f"{name},{it},{sec:.6f}\n" for name, it, sec in rows
    )
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_check(args) -> int:
    est = estimate_diameter(args.n)
    print(f"n={args.n} estimated_diameter={est:.1f}")
    for width in (32, 64):
        lim = precision_limits(args.n, width)
        verdict = "FEASIBLE" if est <= lim.safe_limit else "INFEASIBLE"
        print(
            f"width={width} paper_limit={lim.paper_limit:.1f} "
            f"safe_limit={lim.safe_limit:.1f} {verdict}"
        )
    return 0


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(n=args.n, m_attach=args.m_attach, seed=args.seed)
        graph = generate_scale_free(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = matio.edge_list_text(graph)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"n={graph.n} edges={len(graph.edges)}", file=sys.stderr)
    if args.solve:
        result = power_law_bound(to_distance_matrix(graph))
        diam = diameter(result.distances)
        est = estimate_diameter(graph.n)
        print(
            f"diameter={diam.value} disconnected={diam.disconnected} "
            f"estimate={est:.1f} within_2x_estimate={diam.value <= 2 * est}",
            file=sys.stderr,
        )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "solve": cmd_solve,
        "bench": cmd_bench,
        "check": cmd_check,
        "gen": cmd_gen,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
