"""Command-line interface: detect, batch, gen, sweep-params, eval.

Exit codes: 0 success, 1 usage error, 2 data error.  Every source of
randomness flows from --rng-seed, so identical invocations print identical
records.
"""

from __future__ import annotations

import argparse
import sys
from itertools import product

from .driver import SYNTHETIC_COMBOS, LemonParams, detect
from .evaluation import f1, read_communities, run_batch, write_communities
from .graph import GraphError, read_edge_list, write_edge_list
from .planted import PlantedSpec, generate_planted, preset_spec
from .records import (
    batch_record,
    detection_record,
    eval_record,
    gen_record,
    param_sweep_record,
)
from .seeding import STRATEGIES, SeedSet, SeedingConfig, enlarge_seed_set

__all__ = ["cli_main", "main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _add_detection_flags(p):
    p.add_argument("--walk-steps", type=int, default=3, help="subspace iteration rounds k")
    p.add_argument("--dimension", type=int, default=3, help="subspace dimension l")
    p.add_argument("--expansion-step", type=int, default=6)
    p.add_argument("--alpha", type=float, default=10.0)
    p.add_argument("--avg-comm-size", type=int, default=None)
    p.add_argument("--max-walk-spread-steps", type=int, default=30)
    p.add_argument("--min-comm-size", type=int, default=20)
    p.add_argument("--max-comm-size", type=int, default=100)
    p.add_argument("--mode", choices=("gt", "auto"), default="gt")
    p.add_argument("--max-iterations", type=int, default=20)
    p.add_argument("--degree-normalized-p0", action="store_true")
    p.add_argument("--combo-sweep", action="store_true", help="try the six standard (k,l) combos")


def _add_seeding_flags(p):
    p.add_argument("--seed-strategy", choices=STRATEGIES, default="random")
    p.add_argument("--seed-count", type=int, default=None)
    p.add_argument("--seed-ratio", type=float, default=0.08)
    p.add_argument("--enlarge-seeds", action="store_true")
    p.add_argument("--dataset-kind", choices=("real", "synthetic"), default="real")


def _params_from_args(args) -> LemonParams:
    return LemonParams(
        walk_steps=args.walk_steps,
        dimension=args.dimension,
        expansion_step=args.expansion_step,
        alpha=args.alpha,
        avg_comm_size=args.avg_comm_size,
        size_min=args.min_comm_size,
        size_max=args.max_comm_size,
        mode="ground_truth" if args.mode == "gt" else "auto",
        max_iterations=args.max_iterations,
        degree_normalized_p0=args.degree_normalized_p0,
        combo_sweep=SYNTHETIC_COMBOS if args.combo_sweep else None,
        max_walk_spread_steps=args.max_walk_spread_steps,
    )


def _seeding_from_args(args) -> SeedingConfig:
    return SeedingConfig(
        strategy=args.seed_strategy,
        count=args.seed_count,
        ratio=args.seed_ratio,
        dataset_kind=args.dataset_kind,
        enlarge=args.enlarge_seeds,
    )


def _parse_grid(spec: str) -> list[int]:
    """Grid specs: '3', '2,3,5', or '1..15'."""
    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in spec.split(",") if tok]


def build_parser() -> _Parser:
    parser = _Parser(prog="lemon", description="Local community detection by seed-set expansion")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[], help="expand one seed set into a community")
    p.add_argument("--graph", required=True)
    p.add_argument("--seeds", required=True, help="comma-separated vertex ids")
    p.add_argument("--ground-truth")
    p.add_argument("--community-index", type=int, default=0)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--enlarge-seeds", action="store_true")
    _add_detection_flags(p)

    p = sub.add_parser("batch", help="run many randomized test cases and report F1 statistics")
    p.add_argument("--graph", required=True)
    p.add_argument("--ground-truth", required=True)
    p.add_argument("--cases", type=int, default=24)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--preset", choices=("real", "synthetic"))
    _add_detection_flags(p)
    _add_seeding_flags(p)

    p = sub.add_parser("gen", help="generate a planted-community graph")
    p.add_argument("--preset", help="named spec, e.g. figure1")
    p.add_argument("--groups", help="size:prob pairs, e.g. 100:0.9,100:0.9,320:0.2")
    p.add_argument("--overlaps", default="", help="a:b:count triples, e.g. 0:1:20")
    p.add_argument("--background-p", type=float, default=0.05)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)

    p = sub.add_parser("sweep-params", help="grid over (walk steps, dimension), batch per combo")
    p.add_argument("--graph", required=True)
    p.add_argument("--ground-truth", required=True)
    p.add_argument("--dims", default="1..15", help="dimension grid: '3', '2,3,5', or '1..15'")
    p.add_argument("--walk-steps", default="3", help="walk-step grid, same syntax")
    p.add_argument("--cases", type=int, default=24)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--expansion-step", type=int, default=6)
    p.add_argument("--alpha", type=float, default=10.0)
    p.add_argument("--avg-comm-size", type=int, default=None)
    p.add_argument("--max-walk-spread-steps", type=int, default=30)
    p.add_argument("--min-comm-size", type=int, default=20)
    p.add_argument("--max-comm-size", type=int, default=100)
    p.add_argument("--mode", choices=("gt", "auto"), default="gt")
    p.add_argument("--max-iterations", type=int, default=20)
    p.add_argument("--degree-normalized-p0", action="store_true")
    _add_seeding_flags(p)

    p = sub.add_parser("eval", help="score a detected-communities file against ground truth")
    p.add_argument("--detected", required=True)
    p.add_argument("--ground-truth", required=True)

    return parser


def _cmd_detect(args) -> int:
    g, mapping = read_edge_list(args.graph)
    inverse = {dense: ext for ext, dense in mapping.items()}
    try:
        external_seeds = [int(tok) for tok in args.seeds.split(",") if tok]
    except ValueError:
        raise UsageError("--seeds expects comma-separated integers")
    missing = [s for s in external_seeds if s not in mapping]
    if missing:
        raise GraphError("seeds missing from the graph: " + ", ".join(map(str, missing)))
    seeds = SeedSet(vertices=tuple(sorted(mapping[s] for s in external_seeds)), origin="user")
    if args.enlarge_seeds:
        seeds = enlarge_seed_set(g, seeds)

    truth = None
    if args.ground_truth:
        ground = read_communities(args.ground_truth, id_map=mapping)
        if not 0 <= args.community_index < len(ground.communities):
            raise GraphError(f"community index {args.community_index} out of range")
        truth = ground.communities[args.community_index]
    params = _params_from_args(args)
    if params.mode == "ground_truth" and truth is None:
        raise UsageError("--mode gt requires --ground-truth")

    result = detect(g, seeds, params, ground_truth=truth, rng_seed=args.rng_seed)
    members = [inverse[v] for v in result.members]
    sys.stdout.write(detection_record(result, members=members))
    return 0


def _cmd_batch(args) -> int:
    g, mapping = read_edge_list(args.graph)
    truth = read_communities(args.ground_truth, id_map=mapping)
    params = _params_from_args(args)
    seeding = _seeding_from_args(args)
    if args.preset == "synthetic":
        from dataclasses import replace

        params = replace(params, combo_sweep=SYNTHETIC_COMBOS, degree_normalized_p0=True)
        seeding.dataset_kind = "synthetic"
    report = run_batch(
        g, truth, params, seeding_config=seeding, cases=args.cases, rng_seed=args.rng_seed
    )
    sys.stdout.write(batch_record(report, rng_seed=args.rng_seed, seeding=seeding))
    return 0


def _spec_from_args(args) -> PlantedSpec:
    if args.preset:
        return preset_spec(args.preset, rng_seed=args.rng_seed)
    if not args.groups:
        raise UsageError("gen requires --preset or --groups")
    groups = []
    for token in args.groups.split(","):
        size, prob = token.split(":")
        groups.append((int(size), float(prob)))
    overlaps = []
    for token in (t for t in args.overlaps.split(",") if t):
        a, b, count = token.split(":")
        overlaps.append((int(a), int(b), int(count)))
    return PlantedSpec(
        groups=tuple(groups),
        overlaps=tuple(overlaps),
        background_p=args.background_p,
        rng_seed=args.rng_seed,
    )


def _cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    graph, truth = generate_planted(spec)
    edge_file = f"{args.out_prefix}_edges.txt"
    truth_file = f"{args.out_prefix}_communities.txt"
    write_edge_list(edge_file, graph)
    write_communities(truth_file, truth.communities)
    sys.stdout.write(gen_record(spec, graph.n, graph.num_edges, edge_file, truth_file))
    return 0


def _cmd_sweep_params(args) -> int:
    g, mapping = read_edge_list(args.graph)
    truth = read_communities(args.ground_truth, id_map=mapping)
    seeding = _seeding_from_args(args)
    rows = []
    for k, l in product(_parse_grid(args.walk_steps), _parse_grid(args.dims)):
        params = LemonParams(
            walk_steps=k,
            dimension=l,
            expansion_step=args.expansion_step,
            alpha=args.alpha,
            avg_comm_size=args.avg_comm_size,
            size_min=args.min_comm_size,
            size_max=args.max_comm_size,
            mode="ground_truth" if args.mode == "gt" else "auto",
            max_iterations=args.max_iterations,
            degree_normalized_p0=args.degree_normalized_p0,
            max_walk_spread_steps=args.max_walk_spread_steps,
        )
        report = run_batch(
            g, truth, params, seeding_config=seeding, cases=args.cases, rng_seed=args.rng_seed
        )
        rows.append((k, l, report.mean, report.stddev))
    sys.stdout.write(param_sweep_record(args.rng_seed, args.cases, rows))
    return 0


def _cmd_eval(args) -> int:
    detected = read_communities(args.detected)
    truth = read_communities(args.ground_truth)
    best_scores = []
    best_matches = []
    for comm in detected.communities:
        scored = [(f1(comm, ref)[2], idx) for idx, ref in enumerate(truth.communities)]
        score, idx = max(scored, key=lambda pair: (pair[0], -pair[1]))
        best_scores.append(score)
        best_matches.append(idx)
    sys.stdout.write(eval_record(best_scores, best_matches))
    return 0


_HANDLERS = {
    "detect": _cmd_detect,
    "batch": _cmd_batch,
    "gen": _cmd_gen,
    "sweep-params": _cmd_sweep_params,
    "eval": _cmd_eval,
}


def cli_main(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(str(exc) + "\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(str(exc) + "\n")
        return 1
    except (GraphError, OSError, ValueError, RuntimeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
