"""Synthetic planted-community graphs for desk-scale experiments.

Dense vertex groups are planted in G(n, p) background noise.  Groups may
declare shared vertices; a shared pair of vertices receives each owning
group's internal edge draw (union of Bernoulli trials), and ground truth
lists the shared vertices under both groups.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evaluation import GroundTruth
from .graph import Graph, build_graph

__all__ = ["PlantedSpec", "generate_planted", "preset_spec"]


@dataclass
class PlantedSpec:
    groups: tuple[tuple[int, float], ...]
    overlaps: tuple[tuple[int, int, int], ...] = ()
    background_p: float = 0.0
    rng_seed: int = 0


def preset_spec(name: str, rng_seed: int = 0) -> PlantedSpec:
    """Named generator presets.

    "figure1": two size-100 groups with internal edge probability 0.9 sharing
    20 vertices, one size-320 group at 0.2, background noise 0.05.
    """
    if name == "figure1":
        return PlantedSpec(
            groups=((100, 0.9), (100, 0.9), (320, 0.2)),
            overlaps=((0, 1, 20),),
            background_p=0.05,
            rng_seed=rng_seed,
        )
    raise ValueError(f"unknown preset {name!r}")


def _assign_members(spec: PlantedSpec) -> tuple[list[list[int]], int]:
    shares: dict[int, list[tuple[int, int]]] = {}
    for a, b, count in spec.overlaps:
        lo, hi = sorted((a, b))
        if lo == hi or not (0 <= lo < len(spec.groups)) or not (0 <= hi < len(spec.groups)):
            raise ValueError(f"overlap references bad group pair ({a}, {b})")
        if count < 0:
            raise ValueError("overlap count must be nonnegative")
        shares.setdefault(hi, []).append((lo, count))

    members: list[list[int]] = []
    next_id = 0
    for gi, (size, p) in enumerate(spec.groups):
        if size < 1:
            raise ValueError("group sizes must be >= 1")
        if not 0.0 <= p <= 1.0:
            raise ValueError("edge probabilities must be in [0, 1]")
        shared: list[int] = []
        for src, count in shares.get(gi, []):
            if count > len(members[src]):
                raise ValueError("inconsistent overlap spec: share exceeds source group")
            shared.extend(members[src][-count:])
        if len(set(shared)) != len(shared) or len(shared) > size:
            raise ValueError("inconsistent overlap spec: shares collide or exceed group size")
        fresh = size - len(shared)
        members.append(sorted(shared) + list(range(next_id, next_id + fresh)))
        next_id += fresh
    return members, next_id


def generate_planted(spec: PlantedSpec) -> tuple[Graph, GroundTruth]:
    """Generate the graph and its ground-truth communities, deterministically.

    Draw order is fixed (background pairs first, then each group in listing
    order), so an identical spec always produces identical edges.
    """
    if not 0.0 <= spec.background_p <= 1.0:
        raise ValueError("background probability must be in [0, 1]")
    members, n = _assign_members(spec)

    rng = np.random.default_rng(spec.rng_seed)
    rows, cols = np.triu_indices(n, k=1)
    background = rng.random(rows.size) < spec.background_p

    adj = np.zeros((n, n), dtype=bool)
    covered = np.zeros((n, n), dtype=bool)
    for (size, p), group in zip(spec.groups, members):
        ids = np.asarray(sorted(group))
        iu, ju = np.triu_indices(ids.size, k=1)
        r, c = ids[iu], ids[ju]
        adj[r, c] |= rng.random(r.size) < p
        covered[r, c] = True

    flat_adj = adj[rows, cols]
    flat_cov = covered[rows, cols]
    edge_mask = np.where(flat_cov, flat_adj, background)
    edges = np.column_stack([rows[edge_mask], cols[edge_mask]])
    graph = build_graph(edges, num_vertices=n)
    truth = GroundTruth(communities=[frozenset(group) for group in members])
    return graph, truth
