"""Undirected simple graphs in a compressed adjacency layout.

Everything downstream (walks, subspaces, cuts) operates on these two
containers.  Graphs are immutable after construction and safe to share
between concurrent detections.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "SampledSubgraph",
    "build_graph",
    "induced_subgraph",
    "read_edge_list",
    "shortest_path",
    "volume",
    "write_edge_list",
]


class GraphError(ValueError):
    """Raised for malformed graph input or out-of-range vertices."""


@dataclass
class Graph:
    """Adjacency in offset/target form.

    ``targets[offsets[v]:offsets[v+1]]`` are the neighbors of ``v``, sorted
    ascending with no duplicates and no self-loops.  Both directions of every
    edge are stored, so ``degrees.sum() == 2 * num_edges``.
    """

    n: int
    offsets: np.ndarray
    targets: np.ndarray
    degrees: np.ndarray = field(init=False)

    def __post_init__(self):
        self.degrees = np.diff(self.offsets)

    @property
    def num_edges(self) -> int:
        return self.targets.size // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.targets[self.offsets[v] : self.offsets[v + 1]]

    def has_vertex(self, v: int) -> bool:
        return 0 <= v < self.n

    def edge_pairs(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.n), self.degrees)
        keep = src < self.targets
        return np.column_stack([src[keep], self.targets[keep]])


@dataclass
class SampledSubgraph:
    """An induced subgraph plus the local/global vertex-id bijection."""

    graph: Graph
    local_to_global: np.ndarray
    global_to_local: dict[int, int]

    @property
    def n(self) -> int:
        return self.graph.n

    def to_global(self, local_ids) -> list[int]:
        return [int(self.local_to_global[i]) for i in local_ids]

    def to_local(self, global_ids) -> list[int]:
        return [self.global_to_local[int(v)] for v in global_ids]


def _from_arcs(n: int, src: np.ndarray, dst: np.ndarray) -> Graph:
    # src/dst hold both directions of each edge, already deduplicated.
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.add.at(offsets, src + 1, 1)
    np.cumsum(offsets, out=offsets)
    return Graph(n=n, offsets=offsets, targets=dst.astype(np.int64))


def build_graph(edges, num_vertices: int | None = None) -> Graph:
    """Build a Graph from unordered vertex pairs.

    Duplicate pairs collapse, self-loops are dropped, and both directions are
    stored.  Vertex count is ``max id + 1`` (ids mentioned only in dropped
    self-loops still count) unless ``num_vertices`` asks for extra trailing
    isolated vertices.
    """
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        raise GraphError("empty graph")
    arr = arr.reshape(-1, 2)
    if arr.min() < 0:
        raise GraphError("vertex ids must be nonnegative")
    n = int(arr.max()) + 1
    if num_vertices is not None:
        if num_vertices < n:
            raise GraphError(f"num_vertices {num_vertices} below max id + 1 = {n}")
        n = num_vertices
    arr = arr[arr[:, 0] != arr[:, 1]]
    if arr.size == 0:
        return Graph(n=n, offsets=np.zeros(n + 1, dtype=np.int64), targets=np.zeros(0, dtype=np.int64))
    both = np.concatenate([arr, arr[:, ::-1]])
    both = np.unique(both, axis=0)
    return _from_arcs(n, both[:, 0], both[:, 1])


def induced_subgraph(g: Graph, vertices) -> SampledSubgraph:
    """Induce ``g`` on a vertex set; only edges with both endpoints kept survive."""
    vset = sorted({int(v) for v in vertices})
    if not vset:
        raise GraphError("cannot induce subgraph on empty vertex set")
    for v in (vset[0], vset[-1]):
        if not g.has_vertex(v):
            raise GraphError(f"vertex {v} outside graph of size {g.n}")
    local_to_global = np.asarray(vset, dtype=np.int64)
    lookup = np.full(g.n, -1, dtype=np.int64)
    lookup[local_to_global] = np.arange(len(vset))

    srcs, dsts = [], []
    for local_u, u in enumerate(vset):
        nbrs = g.neighbors(u)
        kept = nbrs[lookup[nbrs] >= 0]
        srcs.append(np.full(kept.size, local_u, dtype=np.int64))
        dsts.append(lookup[kept])
    src = np.concatenate(srcs) if srcs else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(dsts) if dsts else np.zeros(0, dtype=np.int64)
    sub = _from_arcs(len(vset), src, dst)
    return SampledSubgraph(
        graph=sub,
        local_to_global=local_to_global,
        global_to_local={v: i for i, v in enumerate(vset)},
    )


def shortest_path(g: Graph, u: int, v: int, max_len: int):
    """BFS shortest path from u to v with at most ``max_len`` edges.

    Neighbors are explored in ascending id order and the first parent wins,
    which fixes the path deterministically when several shortest paths exist.
    Returns the vertex list or None if no short-enough path exists.
    """
    if u == v:
        raise GraphError("shortest_path requires distinct endpoints")
    if max_len < 1:
        raise GraphError("max_len must be >= 1")
    for w in (u, v):
        if not g.has_vertex(w):
            raise GraphError(f"vertex {w} outside graph of size {g.n}")

    parent = np.full(g.n, -1, dtype=np.int64)
    parent[u] = u
    frontier = deque([u])
    depth = 0
    while frontier and depth < max_len:
        depth += 1
        for _ in range(len(frontier)):
            w = frontier.popleft()
            for nb in g.neighbors(w):
                nb = int(nb)
                if parent[nb] >= 0:
                    continue
                parent[nb] = w
                if nb == v:
                    path = [v]
                    while path[-1] != u:
                        path.append(int(parent[path[-1]]))
                    return path[::-1]
                frontier.append(nb)
    return None


def volume(g: Graph, vertices) -> int:
    """Sum of degrees over a vertex set."""
    total = 0
    for v in vertices:
        if not g.has_vertex(int(v)):
            raise GraphError(f"vertex {v} outside graph of size {g.n}")
        total += int(g.degrees[int(v)])
    return total


def read_edge_list(path) -> tuple[Graph, dict[int, int]]:
    """Load a whitespace-separated edge-list file.

    Lines starting with '#' are ignored.  External ids (which may be sparse,
    as in SNAP files) are remapped onto dense ids 0..n-1 in sorted order; the
    returned dict maps external -> dense so companion files (ground truth,
    seed lists) can be translated consistently.
    """
    pairs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise GraphError(f"bad edge line: {line!r}")
            pairs.append((int(tokens[0]), int(tokens[1])))
    if not pairs:
        raise GraphError("empty graph")
    ids = sorted({v for pair in pairs for v in pair})
    mapping = {ext: i for i, ext in enumerate(ids)}
    g = build_graph([(mapping[a], mapping[b]) for a, b in pairs])
    return g, mapping


def write_edge_list(path, g: Graph) -> None:
    """Write one 'u v' line per edge with u < v, sorted. Deterministic bytes."""
    with open(path, "w", newline="\n") as fh:
        for a, b in g.edge_pairs():
            fh.write(f"{a} {b}\n")
