"""Local subgraph extraction by spreading a random walk from the seed set.

The walk uses the row-stochastic lazy transition p <- pM with
M(u, v) = 1/(d(u)+1) for v in N(u) or v = u, so total mass is conserved and
the touched region grows one hop per step.  The symmetric operator used for
the spectral subspace lives in :mod:`lemon.spectra`; this one is only for
deciding which vertices enter the working subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError, SampledSubgraph, induced_subgraph

__all__ = ["WalkState", "sample_subgraph", "walk_step"]


@dataclass
class WalkState:
    """Sparse probability mass over touched vertices."""

    probabilities: dict[int, float]
    step_count: int = 0

    def support(self, threshold: float = 0.0) -> list[int]:
        return [v for v, p in self.probabilities.items() if p > threshold]

    def total_mass(self) -> float:
        return sum(self.probabilities.values())


def walk_step(g: Graph, state: WalkState) -> WalkState:
    """One lazy-walk step; mass conserved, support never shrinks."""
    nxt: dict[int, float] = {}
    for u, mass in state.probabilities.items():
        share = mass / (int(g.degrees[u]) + 1)
        nxt[u] = nxt.get(u, 0.0) + share
        for v in g.neighbors(u):
            v = int(v)
            nxt[v] = nxt.get(v, 0.0) + share
    return WalkState(probabilities=nxt, step_count=state.step_count + 1)


def sample_subgraph(
    g: Graph,
    seeds,
    target_size: int,
    max_steps: int = 30,
    support_threshold: float = 0.0,
) -> SampledSubgraph:
    """Extract the working subgraph around ``seeds``.

    Walks from the uniform-over-seeds start until the mass has spread to at
    least ``target_size`` vertices (entries above ``support_threshold``) or
    ``max_steps`` is hit, then keeps the top ``target_size`` vertices by
    probability (ties to the lower id), always including every seed.

    The support grows exactly like a BFS ball around the seeds, so the walk
    also stops early once a step adds no new vertices: later steps could only
    reshuffle mass inside a support that is already as large as it will get.
    """
    seed_list = sorted({int(s) for s in seeds})
    if not seed_list:
        raise GraphError("seed set is empty")
    for s in seed_list:
        if not g.has_vertex(s):
            raise GraphError(f"seed {s} not in graph of size {g.n}")
    if target_size < len(seed_list):
        raise GraphError("target_size must be at least the number of seeds")

    state = WalkState(probabilities={s: 1.0 / len(seed_list) for s in seed_list})
    support = state.support(support_threshold)
    while len(support) < target_size and state.step_count < max_steps:
        state = walk_step(g, state)
        new_support = state.support(support_threshold)
        if len(new_support) == len(support):
            break
        support = new_support

    ranked = sorted(support, key=lambda v: (-state.probabilities[v], v))
    chosen = set(seed_list)
    for v in ranked:
        if len(chosen) >= target_size:
            break
        chosen.add(v)
    return induced_subgraph(g, chosen)
