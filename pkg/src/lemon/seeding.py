"""Seed selection strategies, seed-count policies, and shortest-path enlargement."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Graph, GraphError, induced_subgraph, shortest_path

__all__ = [
    "STRATEGIES",
    "SeedSet",
    "SeedingConfig",
    "enlarge_seed_set",
    "seed_count_policy",
    "select_seeds",
]

STRATEGIES = ("high_degree", "low_degree", "triangle", "random", "inward_ratio")


@dataclass
class SeedSet:
    vertices: tuple[int, ...]
    origin: str


@dataclass
class SeedingConfig:
    """How batch runs pick their seeds for each test case."""

    strategy: str = "random"
    count: int | None = None  # None: use seed_count_policy
    ratio: float = 0.08
    dataset_kind: str = "real"  # "real" or "synthetic"
    enlarge: bool = False


def seed_count_policy(dataset_kind: str, community_size: int, ratio: float = 0.08) -> int:
    """Synthetic data seeds a fraction of the community; real data uses 3 seeds."""
    if community_size < 1:
        raise ValueError("community_size must be >= 1")
    if dataset_kind == "synthetic":
        return max(1, round(ratio * community_size))
    if dataset_kind == "real":
        return 3
    raise ValueError(f"unknown dataset kind {dataset_kind!r}")


def _tercile_pool(ranked: list[int], count: int) -> list[int]:
    # Top third of the community, never smaller than the requested count.
    # The floor keeps a unique extreme vertex alone in its pool (a community
    # of five with one hub yields exactly the hub for count = 1).
    pool_size = max(count, len(ranked) // 3, 1)
    return ranked[:pool_size]


def _triangles(g: Graph, members: list[int]) -> list[tuple[int, int, int]]:
    sub = induced_subgraph(g, members)
    sg = sub.graph
    found = []
    for u in range(sg.n):
        for v in sg.neighbors(u):
            v = int(v)
            if v <= u:
                continue
            common = np.intersect1d(sg.neighbors(u), sg.neighbors(v), assume_unique=True)
            for w in common[common > v]:
                found.append((u, int(v), int(w)))
    return [tuple(int(sub.local_to_global[i]) for i in tri) for tri in found]


def select_seeds(g: Graph, community, strategy: str, count: int, rng_seed: int) -> SeedSet:
    """Pick ``count`` seeds from a community under one of five strategies.

    high_degree / low_degree sample uniformly from the top / bottom degree
    tercile, inward_ratio from the top tercile of the in-community edge
    fraction, random from the whole community; triangle picks a uniformly
    random triangle inside the community and requires count = 3.  Ties in
    every ranking break toward the lower vertex id, so the pools — and hence
    the draw for a fixed rng_seed — are deterministic.
    """
    members = sorted({int(v) for v in community})
    if not members:
        raise GraphError("community is empty")
    if count > len(members):
        raise GraphError(f"cannot pick {count} seeds from a community of {len(members)}")
    for v in members:
        if not g.has_vertex(v):
            raise GraphError(f"community vertex {v} not in graph")
    rng = np.random.default_rng(rng_seed)

    if strategy == "random":
        picked = rng.choice(members, size=count, replace=False)
    elif strategy == "high_degree":
        ranked = sorted(members, key=lambda v: (-int(g.degrees[v]), v))
        picked = rng.choice(_tercile_pool(ranked, count), size=count, replace=False)
    elif strategy == "low_degree":
        ranked = sorted(members, key=lambda v: (int(g.degrees[v]), v))
        picked = rng.choice(_tercile_pool(ranked, count), size=count, replace=False)
    elif strategy == "inward_ratio":
        member_set = set(members)

        def ratio(v: int) -> float:
            deg = int(g.degrees[v])
            if deg == 0:
                return 0.0
            inside = sum(1 for u in g.neighbors(v) if int(u) in member_set)
            return inside / deg

        ranked = sorted(members, key=lambda v: (-ratio(v), v))
        picked = rng.choice(_tercile_pool(ranked, count), size=count, replace=False)
    elif strategy == "triangle":
        if count != 3:
            raise GraphError("triangle seeding requires count = 3")
        triangles = _triangles(g, members)
        if not triangles:
            raise GraphError("no triangle")
        picked = triangles[int(rng.integers(len(triangles)))]
    else:
        raise ValueError(f"unknown seeding strategy {strategy!r}")

    return SeedSet(vertices=tuple(sorted(int(v) for v in picked)), origin=strategy)


def enlarge_seed_set(g: Graph, seeds: SeedSet, max_path_len: int = 3) -> SeedSet:
    """Add interior vertices of short paths between seed pairs.

    For every pair of original seeds connected by a shortest path of at most
    ``max_path_len`` edges, the path's interior joins the set.  One pass over
    the original pairs only; fewer than two seeds is a no-op.
    """
    vertices = set(seeds.vertices)
    if len(seeds.vertices) >= 2:
        for u, v in combinations(sorted(seeds.vertices), 2):
            path = shortest_path(g, u, v, max_len=max_path_len)
            if path is not None:
                vertices.update(path[1:-1])
    return SeedSet(vertices=tuple(sorted(vertices)), origin="enlarged")
