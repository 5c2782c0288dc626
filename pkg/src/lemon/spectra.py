"""Local spectral subspaces: normalized adjacency, Krylov start, subspace iteration.

The operator is D^{-1/2} (A + I) D^{-1/2} applied matrix-free (two diagonal
scalings around one sparse multiply plus a vector add).  The basis starts as
an orthonormalized Krylov block and is refined by repeated multiply-then-QR
rounds, converging toward the dominant invariant subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import SampledSubgraph

__all__ = [
    "NormalizedAdjacency",
    "SpectralBasis",
    "initial_probability",
    "krylov_basis",
    "local_spectra",
    "orthonormalize",
    "refine_basis",
]

RANK_DROP_TOL = 1e-10


class NormalizedAdjacency:
    """Symmetric operator x -> D^{-1/2}(A+I)D^{-1/2} x on a sampled subgraph.

    Vertices that end up isolated inside the subgraph get scaling 1, so the
    operator acts as the identity on them instead of dividing by zero.
    """

    def __init__(self, sub: SampledSubgraph):
        g = sub.graph
        self.subgraph = sub
        self.n = g.n
        self._sources = np.repeat(np.arange(g.n), g.degrees)
        self._targets = g.targets
        deg = g.degrees.astype(float)
        self._inv_sqrt_deg = 1.0 / np.sqrt(np.maximum(deg, 1.0))

    def apply(self, x: np.ndarray) -> np.ndarray:
        y = x * self._inv_sqrt_deg
        acc = np.bincount(self._targets, weights=y[self._sources], minlength=self.n)
        return (acc + y) * self._inv_sqrt_deg

    def dense(self) -> np.ndarray:
        """Materialized matrix, for small-instance tests only."""
        out = np.zeros((self.n, self.n))
        for j in range(self.n):
            e = np.zeros(self.n)
            e[j] = 1.0
            out[:, j] = self.apply(e)
        return out


@dataclass
class SpectralBasis:
    """Column-orthonormal basis with its (walk steps, dimension) provenance."""

    columns: np.ndarray
    walk_steps: int
    dimension: int


def initial_probability(sub: SampledSubgraph, seeds, degree_normalized: bool = False) -> np.ndarray:
    """Starting vector p0 over subgraph vertices.

    Uniform mode puts 1/|S| on each seed; degree mode puts d(v)/Vol(S) using
    subgraph degrees.  Sums to 1 either way.
    """
    seed_list = sorted({int(s) for s in seeds})
    if not seed_list:
        raise ValueError("seed set is empty")
    n = sub.graph.n
    for s in seed_list:
        if not 0 <= s < n:
            raise ValueError(f"seed {s} outside subgraph of size {n}")
    p0 = np.zeros(n)
    if degree_normalized:
        vol = float(sum(int(sub.graph.degrees[s]) for s in seed_list))
        if vol == 0.0:
            raise ValueError("all seeds isolated: Vol(S) = 0 in degree mode")
        for s in seed_list:
            p0[s] = sub.graph.degrees[s] / vol
    else:
        for s in seed_list:
            p0[s] = 1.0 / len(seed_list)
    return p0


def orthonormalize(columns: np.ndarray, drop_tol: float = RANK_DROP_TOL) -> np.ndarray:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Columns whose residual norm falls below ``drop_tol`` after projection are
    dropped, so the result can have fewer columns than the input.
    """
    n, m = columns.shape
    kept: list[np.ndarray] = []
    for j in range(m):
        v = columns[:, j].astype(float).copy()
        for _ in range(2):
            for q in kept:
                v -= (q @ v) * q
        norm = np.linalg.norm(v)
        if norm < drop_tol:
            continue
        kept.append(v / norm)
    if not kept:
        return np.zeros((n, 0))
    return np.column_stack(kept)


def krylov_basis(op: NormalizedAdjacency, p0: np.ndarray, l: int) -> SpectralBasis:
    """Orthonormal basis of span(p0, Ap0, ..., A^{l-1}p0)."""
    if l < 1:
        raise ValueError("subspace dimension must be >= 1")
    if not np.any(p0):
        raise ValueError("p0 is all zeros")
    block = np.empty((op.n, l))
    vec = np.asarray(p0, dtype=float)
    for j in range(l):
        block[:, j] = vec
        if j + 1 < l:
            vec = op.apply(vec)
    basis = orthonormalize(block)
    if basis.shape[1] == 0:
        raise ValueError("Krylov block collapsed to rank zero")
    return SpectralBasis(columns=basis, walk_steps=0, dimension=basis.shape[1])


def refine_basis(op: NormalizedAdjacency, columns: np.ndarray) -> np.ndarray:
    """One subspace-iteration round: multiply by the operator, then thin QR."""
    product = np.column_stack([op.apply(columns[:, j]) for j in range(columns.shape[1])])
    refined = orthonormalize(product)
    if refined.shape[1] == 0:
        raise RuntimeError("subspace iteration collapsed to rank zero")
    return refined


def local_spectra(op: NormalizedAdjacency, p0: np.ndarray, k: int, l: int) -> SpectralBasis:
    """k rounds of subspace iteration on the Krylov start; k = 0 is the start itself."""
    if k < 0:
        raise ValueError("walk step count must be >= 0")
    basis = krylov_basis(op, p0, l)
    cols = basis.columns
    for _ in range(k):
        cols = refine_basis(op, cols)
    return SpectralBasis(columns=cols, walk_steps=k, dimension=cols.shape[1])
