"""Conductance, sweep cuts, the reseeding stop rule, and spectral bound checks.

Conductance of a set is cut / volume (the fraction of incident edge endpoints
that leave the set).  The sweep walks prefixes of a score ordering and keeps
cut/volume updated incrementally, so a whole curve costs one pass over the
touched edges.  The eigen-oracle works on dense matrices up to a size cap and
exists for verification only; the detection path never calls it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import GraphError, SampledSubgraph
from .recovery import ScoreVector

__all__ = [
    "ConductanceBounds",
    "SpectralOracle",
    "SweepCurve",
    "conductance",
    "normalized_laplacian",
    "rayleigh_quotient",
    "spectral_bounds",
    "stop_decision",
    "sweep",
]

ORACLE_SIZE_CAP = 500


@dataclass
class SweepCurve:
    """Conductance over prefix sets, with the minimizing size."""

    sizes: list[int]
    conductances: list[float]
    argmin_size: int
    min_value: float


def conductance(sub: SampledSubgraph, vertices) -> float:
    """cut(S, complement) / volume(S); the full set has conductance 0.

    A set of volume zero (all members isolated) is defined to have
    conductance 1.
    """
    g = sub.graph
    members = {int(v) for v in vertices}
    if not members:
        raise GraphError("conductance of the empty set is undefined")
    for v in members:
        if not g.has_vertex(v):
            raise GraphError(f"vertex {v} outside subgraph of size {g.n}")
    if len(members) == g.n:
        return 0.0
    mask = np.zeros(g.n, dtype=bool)
    mask[list(members)] = True
    vol = int(g.degrees[mask].sum())
    if vol == 0:
        return 1.0
    cut = 0
    for v in members:
        cut += int(g.degrees[v]) - int(np.count_nonzero(mask[g.neighbors(v)]))
    return cut / vol


def sweep(sub: SampledSubgraph, scores: ScoreVector, size_min: int, size_max: int) -> SweepCurve:
    """Conductance of every prefix of the score ordering in [size_min, size_max].

    Incremental: adding vertex v updates cut by d(v) - 2 * (edges into the
    prefix) and volume by d(v).  The argmin breaks ties toward the smaller
    size; the trivial full-set prefix (conductance 0) is excluded from argmin
    selection whenever smaller sizes are available.
    """
    g = sub.graph
    n = g.n
    if not 1 <= size_min <= size_max <= n:
        raise ValueError(f"need 1 <= size_min <= size_max <= {n}")

    mask = np.zeros(n, dtype=bool)
    cut = 0
    vol = 0
    sizes: list[int] = []
    conds: list[float] = []
    for i, v in enumerate(scores.sorted_order, start=1):
        v = int(v)
        inside = int(np.count_nonzero(mask[g.neighbors(v)]))
        cut += int(g.degrees[v]) - 2 * inside
        vol += int(g.degrees[v])
        mask[v] = True
        if i > size_max:
            break
        if i >= size_min:
            sizes.append(i)
            if i == n:
                conds.append(0.0)
            else:
                conds.append(cut / vol if vol > 0 else 1.0)

    candidates = [(c, s) for s, c in zip(sizes, conds) if s < n]
    if not candidates:
        candidates = list(zip(conds, sizes))
    min_value, argmin_size = min(candidates)
    return SweepCurve(sizes=sizes, conductances=conds, argmin_size=argmin_size, min_value=min_value)


def stop_decision(history) -> int | None:
    """Index of the first local minimum of the curve, or None while nonincreasing.

    Plateaus extend the candidate minimum: the returned index is the last of
    a run of equal values once a strictly larger value follows it.
    """
    values = list(history)
    if not values:
        raise ValueError("history is empty")
    for j in range(len(values) - 1):
        if values[j + 1] > values[j]:
            return j
    return None


def rayleigh_quotient(H: np.ndarray, x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    denom = float(x @ x)
    if denom == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    return float(x @ (np.asarray(H, dtype=float) @ x)) / denom


def normalized_laplacian(sub: SampledSubgraph) -> np.ndarray:
    """Dense I - D^{-1/2} A D^{-1/2}; isolated vertices contribute identity rows."""
    g = sub.graph
    n = g.n
    inv_sqrt = 1.0 / np.sqrt(np.maximum(g.degrees.astype(float), 1.0))
    L = np.eye(n)
    for v in range(n):
        for u in g.neighbors(v):
            L[v, int(u)] -= inv_sqrt[v] * inv_sqrt[int(u)]
    return L


@dataclass
class SpectralOracle:
    """Dense eigendecomposition of the normalized Laplacian of a subgraph.

    Eigenvalues ascend; eigenvectors are orthonormal columns.  Backed by
    LAPACK's symmetric solver, which at the <= 500 vertex cap is exact far
    beyond the 1e-8 reconstruction tolerance required of it.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @classmethod
    def for_subgraph(cls, sub: SampledSubgraph, size_cap: int = ORACLE_SIZE_CAP) -> "SpectralOracle":
        if sub.graph.n > size_cap:
            raise ValueError("oracle too large")
        L = normalized_laplacian(sub)
        vals, vecs = np.linalg.eigh(L)
        return cls(matrix=L, eigenvalues=vals, eigenvectors=vecs)

    def eigen_weights(self, x: np.ndarray) -> np.ndarray:
        """Weights w_i of x in the eigenbasis: w_i = <q_i, x>^2 / ||x||^2."""
        x = np.asarray(x, dtype=float)
        coeffs = self.eigenvectors.T @ x
        return coeffs**2 / float(x @ x)


@dataclass
class ConductanceBounds:
    lower: float
    upper: float
    phi: float
    w1: float
    lambda2: float


def spectral_bounds(
    sub: SampledSubgraph, community, size_cap: int = ORACLE_SIZE_CAP
) -> ConductanceBounds:
    """Cheeger-style two-sided bound on the conductance of ``community``.

    lower = lambda_2 / 2 from the normalized Laplacian; it bounds the
    conductance of whichever of (set, complement) has the smaller volume,
    hence of any community occupying at most half the subgraph's volume.
    upper = min(1, 2 * (1 - w1)) where w1 is the weight of D^{1/2}x on the
    bottom eigenvector.  On a connected subgraph w1 equals Vol(C)/Vol(G).
    """
    g = sub.graph
    members = sorted({int(v) for v in community})
    if not members or len(members) >= g.n:
        raise GraphError("community must be a nonempty proper subset")
    oracle = SpectralOracle.for_subgraph(sub, size_cap=size_cap)

    x = np.zeros(g.n)
    x[members] = 1.0
    dx = np.sqrt(np.maximum(g.degrees.astype(float), 0.0)) * x
    if float(dx @ dx) == 0.0:
        w1 = 0.0
    else:
        w1 = float(oracle.eigen_weights(dx)[0])

    lower = float(oracle.eigenvalues[1]) / 2.0 if g.n >= 2 else 0.0
    upper = min(1.0, 2.0 * (1.0 - w1))
    phi = conductance(sub, members)
    return ConductanceBounds(lower=lower, upper=upper, phi=phi, w1=w1, lambda2=float(oracle.eigenvalues[1]))
