"""Minimum-one-norm sparse indicator recovery over a spectral subspace.

Solves  min sum(y)  s.t.  y = Vz, y >= 0, sum_{s in seeds} y(s) >= 1  with a
self-contained dense simplex.  The program has only l = dim(V) genuine
variables but N+1 inequality rows, so the tableau is organized around the
equality-form dual (l rows, N+1 columns): max u_seed s.t. V^T u = V^T 1,
u >= 0.  That keeps every pivot at O(l*N) while the optimal primal vertex z
is recovered exactly from the final basis (the active constraint rows).
Pivoting uses most-negative reduced cost and falls back to Bland's rule when
the objective stalls, which prevents cycling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectra import SpectralBasis

__all__ = [
    "LpInfeasibleError",
    "LpProblem",
    "LpTolerances",
    "ScoreVector",
    "solve_sparse_indicator",
    "truncate_top",
]

_PIVOT_TOL = 1e-10
_COST_TOL = 1e-9
_STALL_LIMIT = 50


class LpInfeasibleError(RuntimeError):
    """No vector in the subspace is nonnegative with unit seed mass."""


@dataclass(frozen=True)
class LpTolerances:
    feasibility: float = 1e-9
    optimality_gap: float = 1e-6


@dataclass
class ScoreVector:
    """Nonnegative per-vertex scores plus their nonincreasing sort order."""

    values: np.ndarray
    sorted_order: np.ndarray

    @classmethod
    def from_values(cls, raw: np.ndarray) -> "ScoreVector":
        values = np.maximum(np.asarray(raw, dtype=float), 0.0)
        # ties broken by lower vertex id
        order = np.lexsort((np.arange(values.size), -values))
        return cls(values=values, sorted_order=order)


@dataclass
class LpProblem:
    """The reduced program: variables z, rows = N nonnegativity + 1 seed row."""

    basis: np.ndarray
    seed_rows: np.ndarray

    def constraint_matrix(self) -> np.ndarray:
        seed_row = self.basis[self.seed_rows].sum(axis=0)
        return np.vstack([self.basis, seed_row])

    def rhs(self) -> np.ndarray:
        h = np.zeros(self.basis.shape[0] + 1)
        h[-1] = 1.0
        return h

    def objective(self) -> np.ndarray:
        return self.basis.sum(axis=0)


def solve_sparse_indicator(
    basis: SpectralBasis, seeds, tolerances: LpTolerances = LpTolerances()
) -> ScoreVector:
    """Solve the one-norm program and return the sorted score vector.

    Raises LpInfeasibleError when no nonnegative vector in the span carries
    positive combined mass on the seeds, i.e. the seed set is spectrally
    invisible in this subspace.
    """
    V = np.asarray(basis.columns, dtype=float)
    if V.ndim != 2 or V.shape[1] < 1:
        raise ValueError("basis must have at least one column")
    seed_rows = np.asarray(sorted({int(s) for s in seeds}), dtype=np.int64)
    if seed_rows.size == 0:
        raise ValueError("seed set is empty")
    if seed_rows.min() < 0 or seed_rows.max() >= V.shape[0]:
        raise ValueError("seed index outside basis rows")

    problem = LpProblem(basis=V, seed_rows=seed_rows)
    z, dual_objective = _solve_reduced_lp(problem)
    y = V @ z

    if y.min() < -tolerances.feasibility:
        raise RuntimeError(f"LP solution violates nonnegativity by {-y.min():.3e}")
    if y[seed_rows].sum() < 1.0 - tolerances.feasibility:
        raise RuntimeError("LP solution violates the seed constraint")
    primal_objective = float(problem.objective() @ z)
    gap = abs(primal_objective - dual_objective)
    if gap > tolerances.optimality_gap * max(1.0, abs(dual_objective)):
        raise RuntimeError(f"duality gap {gap:.3e} exceeds tolerance")
    return ScoreVector.from_values(y)


def truncate_top(scores: ScoreVector, size: int) -> set[int]:
    """Vertices holding the top ``size`` scores (ties to the lower id)."""
    n = scores.values.size
    if not 1 <= size <= n:
        raise ValueError(f"size must be in [1, {n}]")
    return {int(v) for v in scores.sorted_order[:size]}


def _solve_reduced_lp(problem: LpProblem) -> tuple[np.ndarray, float]:
    """Return (z*, optimal objective) for the reduced program."""
    G = problem.constraint_matrix()
    h = problem.rhs()
    c = problem.objective()
    m, l = G.shape

    # Equality-form dual: min -h.u  s.t.  G^T u = c, u >= 0.
    A = G.T.copy()
    b = c.copy()
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Phase 1: artificial identity basis.
    tableau = np.hstack([A, np.eye(l), b[:, None]])
    basis = list(range(m, m + l))
    cost1 = np.concatenate([np.zeros(m), np.ones(l)])
    _pivot_until_optimal(tableau, basis, cost1, blocked=())
    if cost1[basis] @ tableau[:, -1] > 1e-7 * max(1.0, float(np.abs(b).sum())):
        raise RuntimeError("phase 1 failed: dual system inconsistent")
    _drive_out_artificials(tableau, basis, m)

    # Phase 2: maximize the seed-row dual variable; artificials barred.
    cost2 = np.zeros(m + l)
    cost2[m - 1] = -1.0
    feasible = _pivot_until_optimal(tableau, basis, cost2, blocked=range(m, m + l))
    if not feasible:
        raise LpInfeasibleError("LP infeasible")

    u = np.zeros(m + l)
    u[basis] = tableau[:, -1]
    dual_objective = float(u[m - 1])

    active = sorted(j for j in basis if j < m)
    G_b = G[active]
    h_b = h[active]
    if len(active) == l:
        try:
            z = np.linalg.solve(G_b, h_b)
        except np.linalg.LinAlgError:
            z = np.linalg.lstsq(G_b, h_b, rcond=None)[0]
    else:
        z = np.linalg.lstsq(G_b, h_b, rcond=None)[0]
    return z, dual_objective


def _pivot_until_optimal(tableau, basis, cost, blocked) -> bool:
    """Run simplex pivots in place; False means the problem is unbounded."""
    blocked = set(blocked)
    ncols = tableau.shape[1] - 1
    bland = False
    stall = 0
    last_objective = np.inf
    max_iterations = 1000 + 200 * ncols
    for _ in range(max_iterations):
        reduced = cost[:ncols] - cost[basis] @ tableau[:, :ncols]
        entering = -1
        if bland:
            for j in range(ncols):
                if j not in blocked and j not in basis and reduced[j] < -_COST_TOL:
                    entering = j
                    break
        else:
            order = np.argsort(reduced)
            for j in order:
                if reduced[j] >= -_COST_TOL:
                    break
                if j not in blocked and j not in basis:
                    entering = int(j)
                    break
        if entering < 0:
            return True

        col = tableau[:, entering]
        rows = np.nonzero(col > _PIVOT_TOL)[0]
        if rows.size == 0:
            return False
        ratios = tableau[rows, -1] / col[rows]
        best = ratios.min()
        candidates = rows[ratios <= best + _PIVOT_TOL]
        leaving = min(candidates, key=lambda i: basis[i])

        _pivot(tableau, leaving, entering)
        basis[leaving] = entering

        objective = float(cost[basis] @ tableau[:, -1])
        if objective < last_objective - 1e-12:
            stall = 0
            last_objective = objective
        else:
            stall += 1
            if stall >= _STALL_LIMIT:
                bland = True
    raise RuntimeError("simplex iteration limit exceeded")


def _pivot(tableau, row, col) -> None:
    tableau[row] /= tableau[row, col]
    pivot_col = tableau[:, col].copy()
    pivot_col[row] = 0.0
    tableau -= np.outer(pivot_col, tableau[row])
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0


def _drive_out_artificials(tableau, basis, m) -> None:
    for i, var in enumerate(basis):
        if var < m:
            continue
        row = tableau[i, :m]
        pivots = np.nonzero(np.abs(row) > _PIVOT_TOL)[0]
        if pivots.size == 0:
            # redundant dual row; leave the zero-valued artificial in place
            continue
        _pivot(tableau, i, int(pivots[0]))
        basis[i] = int(pivots[0])
