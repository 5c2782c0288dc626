"""F1 scoring, ground-truth loading, and the batch experiment protocol.

A batch draws test cases independently: each case picks a ground-truth
community uniformly at random (with replacement), selects seeds under the
configured policy, runs one detection, and records the F1 score.  Failed
cases score 0 and stay in the report so means are not biased upward.  Cases
may execute concurrently; every per-case random seed is drawn up front from
the master seed, so the report does not depend on scheduling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError

__all__ = [
    "BatchReport",
    "GroundTruth",
    "f1",
    "read_communities",
    "run_batch",
    "write_communities",
]


def f1(detected, truth) -> tuple[float, float, float]:
    """(precision, recall, F1) of a detected set against a ground-truth set.

    An empty detected set (or an empty intersection) scores all zeros.  Note
    the deliberate asymmetry: swapping the arguments swaps precision and
    recall.
    """
    truth = set(truth)
    if not truth:
        raise ValueError("ground-truth community is empty")
    detected = set(detected)
    if not detected:
        return 0.0, 0.0, 0.0
    overlap = len(detected & truth)
    precision = overlap / len(detected)
    recall = overlap / len(truth)
    if precision + recall == 0.0:
        return 0.0, 0.0, 0.0
    return precision, recall, 2.0 * precision * recall / (precision + recall)


@dataclass
class GroundTruth:
    communities: list[frozenset[int]]
    source: str | None = None

    def __post_init__(self):
        if not self.communities or any(not c for c in self.communities):
            raise ValueError("ground truth must contain only nonempty communities")

    def average_size(self) -> float:
        return sum(len(c) for c in self.communities) / len(self.communities)


def read_communities(path, id_map: dict[int, int] | None = None) -> GroundTruth:
    """One community per line, whitespace-separated ids; '#' comments ignored.

    When ``id_map`` (external -> dense, from the edge-list loader) is given,
    ids are translated and any id missing from the graph raises an error that
    lists the offenders.
    """
    communities = []
    unknown: set[int] = set()
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            ids = [int(tok) for tok in line.split()]
            if id_map is not None:
                unknown.update(v for v in ids if v not in id_map)
                ids = [id_map[v] for v in ids if v in id_map]
            if ids:
                communities.append(frozenset(ids))
    if unknown:
        listing = ", ".join(str(v) for v in sorted(unknown))
        raise GraphError(f"ground-truth vertices missing from the graph: {listing}")
    if not communities:
        raise GraphError(f"no communities found in {path}")
    return GroundTruth(communities=communities, source=str(path))


def write_communities(path, communities) -> None:
    with open(path, "w", newline="\n") as fh:
        for comm in communities:
            fh.write(" ".join(str(v) for v in sorted(comm)) + "\n")


@dataclass
class BatchReport:
    f1_scores: list[float]
    mean: float
    stddev: float
    cases: int
    params: "LemonParams"
    case_seeds: list[int]
    community_indices: list[int]
    errors: list[str]

    @property
    def failed_cases(self) -> int:
        return sum(1 for e in self.errors if e)


def _thread_count() -> int:
    env = os.environ.get("LEMON_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_batch(
    g: Graph,
    truth: GroundTruth,
    params: "LemonParams",
    seeding_config=None,
    cases: int = 24,
    rng_seed: int = 0,
    threads: int | None = None,
) -> BatchReport:
    """Run ``cases`` independent detections and aggregate F1 statistics.

    The standard deviation uses the sample (n-1) convention and is 0 for a
    single case.  ``threads`` defaults to the LEMON_THREADS environment
    variable, falling back to the machine's CPU count.
    """
    from .driver import detect  # local import to avoid a module cycle
    from .seeding import SeedingConfig, enlarge_seed_set, seed_count_policy, select_seeds

    if cases < 1:
        raise ValueError("cases must be >= 1")
    seeding_config = seeding_config or SeedingConfig()
    bad = sorted({v for comm in truth.communities for v in comm if not g.has_vertex(v)})
    if bad:
        raise GraphError(
            "ground-truth vertices missing from the graph: " + ", ".join(str(v) for v in bad)
        )

    master = np.random.default_rng(rng_seed)
    community_indices = [int(master.integers(len(truth.communities))) for _ in range(cases)]
    case_seeds = [int(master.integers(2**63 - 1)) for _ in range(cases)]

    avg_size = truth.average_size()
    if params.avg_comm_size is None:
        from dataclasses import replace

        params = replace(params, avg_comm_size=max(1, round(avg_size)))

    def run_case(index: int) -> tuple[float, str]:
        community = truth.communities[community_indices[index]]
        try:
            count = seeding_config.count or seed_count_policy(
                seeding_config.dataset_kind, len(community), seeding_config.ratio
            )
            count = min(count, len(community))
            seeds = select_seeds(
                g, community, seeding_config.strategy, count, case_seeds[index]
            )
            if seeding_config.enlarge:
                seeds = enlarge_seed_set(g, seeds)
            result = detect(g, seeds, params, ground_truth=community, rng_seed=case_seeds[index])
            return f1(set(result.members), community)[2], ""
        except Exception as exc:  # failed case scores zero but stays in the report
            return 0.0, f"{type(exc).__name__}: {exc}"

    workers = threads if threads is not None else _thread_count()
    if workers > 1 and cases > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_case, range(cases)))
    else:
        outcomes = [run_case(i) for i in range(cases)]

    scores = [score for score, _ in outcomes]
    errors = [err for _, err in outcomes]
    mean = sum(scores) / cases
    if cases > 1:
        stddev = math.sqrt(sum((s - mean) ** 2 for s in scores) / (cases - 1))
    else:
        stddev = 0.0
    return BatchReport(
        f1_scores=scores,
        mean=mean,
        stddev=stddev,
        cases=cases,
        params=params,
        case_seeds=case_seeds,
        community_indices=community_indices,
        errors=errors,
    )
