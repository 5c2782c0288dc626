"""One full detection: sample, build the subspace, solve the LP, size, reseed, stop.

Ground-truth mode truncates at the known community size each round and keeps
augmenting the seed set until it outgrows the target community, returning the
best-scoring round.  Auto mode sizes each round by the conductance sweep and
stops at the first local minimum of the per-round minimum conductance.  A
detection is deterministic: the only randomness in the pipeline is seed
selection, which happens before this module is invoked.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .conductance import stop_decision, sweep
from .evaluation import f1
from .graph import Graph, GraphError, SampledSubgraph
from .recovery import LpInfeasibleError, ScoreVector, solve_sparse_indicator
from .sampling import sample_subgraph
from .seeding import SeedSet
from .spectra import NormalizedAdjacency, initial_probability, local_spectra

__all__ = [
    "SYNTHETIC_COMBOS",
    "DetectionResult",
    "IterationRecord",
    "LemonParams",
    "detect",
    "real_params",
    "reseed",
    "synthetic_params",
]

# (walk steps, dimension) pairs tried on synthetic benchmarks; the best
# F1 among them is reported.
SYNTHETIC_COMBOS = ((2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5))


@dataclass
class LemonParams:
    walk_steps: int = 3
    dimension: int = 3
    expansion_step: int = 6
    alpha: float = 10.0
    avg_comm_size: int | None = None
    size_min: int = 20
    size_max: int = 100
    mode: str = "ground_truth"  # or "auto"
    max_iterations: int = 20
    degree_normalized_p0: bool = False
    combo_sweep: tuple[tuple[int, int], ...] | None = None
    max_walk_spread_steps: int = 30
    support_threshold: float = 0.0

    def __post_init__(self):
        if self.walk_steps < 0 or self.dimension < 1:
            raise ValueError("need walk_steps >= 0 and dimension >= 1")
        if self.expansion_step < 1 or self.max_iterations < 1:
            raise ValueError("need expansion_step >= 1 and max_iterations >= 1")
        if not 1 <= self.size_min <= self.size_max:
            raise ValueError("need 1 <= size_min <= size_max")
        if self.mode not in ("ground_truth", "auto"):
            raise ValueError(f"unknown mode {self.mode!r}")


def real_params(**overrides) -> LemonParams:
    """Defaults for real networks: (3, 3), uniform p0, no combo sweep."""
    return LemonParams(**overrides)


def synthetic_params(**overrides) -> LemonParams:
    """Defaults for benchmark graphs: combo sweep plus degree-weighted p0."""
    base = dict(combo_sweep=SYNTHETIC_COMBOS, degree_normalized_p0=True)
    base.update(overrides)
    return LemonParams(**base)


@dataclass
class IterationRecord:
    index: int
    seed_size: int
    candidate_size: int
    phi_min: float | None = None
    sweep_argmin: int | None = None
    f1: float | None = None


@dataclass
class DetectionResult:
    members: list[int]
    chosen_size: int
    iterations: list[IterationRecord]
    stop_reason: str
    params: LemonParams
    chosen_iteration: int
    rng_seed: int | None = None
    combo: tuple[int, int] | None = None


def reseed(sub: SampledSubgraph, scores: ScoreVector, original_seeds: SeedSet, t: int) -> SeedSet:
    """Union the original seeds with the top-t scored vertices (global ids)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    top = scores.sorted_order[: min(t, scores.values.size)]
    vertices = set(original_seeds.vertices) | set(sub.to_global(top))
    return SeedSet(vertices=tuple(sorted(vertices)), origin="enlarged")


def detect(
    g: Graph,
    seeds: SeedSet,
    params: LemonParams,
    ground_truth=None,
    rng_seed: int | None = None,
) -> DetectionResult:
    """Run one seed-set expansion and return the detected community.

    ``ground_truth`` is required in ground_truth mode and whenever a combo
    sweep is configured (combos are ranked by F1).  ``rng_seed`` is carried
    into the result only for provenance; detection itself is deterministic.
    """
    if not seeds.vertices:
        raise GraphError("seed set is empty")
    for v in seeds.vertices:
        if not g.has_vertex(v):
            raise GraphError(f"seed {v} not in graph")
    truth = None if ground_truth is None else {int(v) for v in ground_truth}
    if params.mode == "ground_truth" and truth is None:
        raise ValueError("ground_truth mode requires a ground-truth community")

    if params.combo_sweep:
        if truth is None:
            raise ValueError("combo sweep requires a ground-truth community")
        best = None
        for k, l in params.combo_sweep:
            result = _detect_single(g, seeds, params, k, l, truth, rng_seed)
            score = result.iterations[result.chosen_iteration].f1
            if best is None or score > best.iterations[best.chosen_iteration].f1:
                best = result
        return best
    return _detect_single(g, seeds, params, params.walk_steps, params.dimension, truth, rng_seed)


def _resolve_target_size(params: LemonParams, truth, seed_count: int) -> int:
    avg = len(truth) if truth is not None else params.avg_comm_size
    if avg is None:
        raise ValueError("avg_comm_size is required when no ground truth is given")
    return max(seed_count, int(round(params.alpha * avg)))


def _detect_single(g, seeds, params, k, l, truth, rng_seed) -> DetectionResult:
    s0 = tuple(sorted(seeds.vertices))
    target_size = _resolve_target_size(params, truth, len(s0))
    current = SeedSet(vertices=s0, origin=seeds.origin)

    records: list[IterationRecord] = []
    candidates: list[list[int]] = []
    phi_history: list[float] = []
    stop_reason = None
    chosen = None

    for i in range(params.max_iterations):
        sub = sample_subgraph(
            g,
            current.vertices,
            target_size,
            max_steps=params.max_walk_spread_steps,
            support_threshold=params.support_threshold,
        )
        local_seeds = sub.to_local(current.vertices)
        p0 = initial_probability(sub, local_seeds, params.degree_normalized_p0)
        basis = local_spectra(NormalizedAdjacency(sub), p0, k, l)
        try:
            scores = solve_sparse_indicator(basis, local_seeds)
        except LpInfeasibleError:
            if i == 0:
                raise
            stop_reason = "lp_infeasible"
            break

        n_sub = sub.graph.n
        if params.mode == "ground_truth":
            size = min(len(truth), n_sub)
            members = sub.to_global(scores.sorted_order[:size])
            _, _, score = f1(set(members), truth)
            records.append(IterationRecord(i, len(current.vertices), size, f1=score))
            candidates.append(members)
            if len(current.vertices) > len(truth):
                stop_reason = "size_exceeded"
                break
        else:
            hi = min(params.size_max, n_sub)
            lo = min(params.size_min, hi)
            curve = sweep(sub, scores, lo, hi)
            members = sub.to_global(scores.sorted_order[: curve.argmin_size])
            score = f1(set(members), truth)[2] if truth is not None else None
            phi_history.append(curve.min_value)
            records.append(
                IterationRecord(
                    i,
                    len(current.vertices),
                    curve.argmin_size,
                    phi_min=curve.min_value,
                    sweep_argmin=curve.argmin_size,
                    f1=score,
                )
            )
            candidates.append(members)
            at = stop_decision(phi_history)
            if at is not None:
                chosen = at
                stop_reason = "local_min"
                break

        t = len(s0) + (i + 1) * params.expansion_step
        current = reseed(sub, scores, SeedSet(vertices=s0, origin=seeds.origin), t)

    if stop_reason is None:
        stop_reason = "max_iter"
    if chosen is None:
        if params.mode == "ground_truth":
            chosen = max(range(len(records)), key=lambda j: (records[j].f1, -j))
        else:
            chosen = min(range(len(records)), key=lambda j: (phi_history[j], j))

    members = candidates[chosen]
    return DetectionResult(
        members=members,
        chosen_size=len(members),
        iterations=records,
        stop_reason=stop_reason,
        params=replace(params, walk_steps=k, dimension=l),
        chosen_iteration=chosen,
        rng_seed=rng_seed,
        combo=(k, l),
    )
