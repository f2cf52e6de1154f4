"""Orthogonal-array design: array construction, space segmentation, orthogonal
crossover and the orthogonal initial population.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Bounds, Population, ProblemSpec, evaluate
from .nsga2 import crowding_distance_assignment, fast_nondominated_sort, sort_population

MAX_OA_ROWS = 10**6


class CapacityError(ValueError):
    """An orthogonal array would exceed the row budget."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


@dataclass(frozen=True)
class OrthogonalArray:
    levels_q: int
    factors_f: int
    cells: np.ndarray  # (rows, factors), entries 1..Q

    @property
    def rows_m(self) -> int:
        return self.cells.shape[0]

    def is_balanced(self) -> bool:
        """Check that every column is balanced and every column pair is strength-2 balanced."""
        Q, A = self.levels_q, self.cells - 1
        M, F = A.shape
        for j in range(F):
            if not np.all(np.bincount(A[:, j], minlength=Q) == M // Q):
                return False
        for a in range(F):
            for b in range(a + 1, F):
                pair = np.bincount(A[:, a] * Q + A[:, b], minlength=Q * Q)
                if not np.all(pair == M // (Q * Q)):
                    return False
        return True


def min_exponent(Q: int, F: int) -> int:
    """Smallest J with (Q^J - 1) / (Q - 1) >= F."""
    J = 1
    while (Q**J - 1) // (Q - 1) < F:
        J += 1
    return J


def construct_orthogonal_array(Q: int, F: int, max_rows: int = MAX_OA_ROWS) -> OrthogonalArray:
    """Build L_M(Q^F) with M = Q^J rows from J basic columns and their mod-Q combinations."""
    if not is_prime(Q):
        raise ValueError(f"Q must be prime, got {Q}")
    if F < 1:
        raise ValueError(f"F must be at least 1, got {F}")
    J = min_exponent(Q, F)
    M = Q**J
    if M > max_rows:
        raise CapacityError(f"L(Q={Q}, F={F}) needs {M} rows, above the budget of {max_rows}")
    F_full = (Q**J - 1) // (Q - 1)
    a = np.zeros((M, F_full), dtype=np.int64)
    i = np.arange(M)
    # columns are 0-based here; basic column k sits at (Q^(k-1) - 1) / (Q - 1)
    for k in range(1, J + 1):
        j = (Q ** (k - 1) - 1) // (Q - 1)
        a[:, j] = (i // Q ** (J - k)) % Q
    for k in range(2, J + 1):
        j = (Q ** (k - 1) - 1) // (Q - 1)
        for s in range(j):
            for t in range(1, Q):
                a[:, j + s * (Q - 1) + t] = (a[:, s] * t + a[:, j]) % Q
    cells = a[:, :F] + 1
    cells.flags.writeable = False
    return OrthogonalArray(levels_q=Q, factors_f=F, cells=cells)


@dataclass(frozen=True)
class SubspaceSet:
    subspaces: tuple
    split_dim: int

    def __len__(self) -> int:
        return len(self.subspaces)


def segment_space(bounds: Bounds, S: int) -> SubspaceSet:
    """Cut the box into S equal slabs along its widest dimension (first one on ties)."""
    if S < 1:
        raise ValueError("S must be at least 1")
    s = int(np.argmax(bounds.width))
    step = bounds.width[s] / S
    parts = []
    for i in range(S):
        lo = bounds.lower.copy()
        hi = bounds.upper.copy()
        lo[s] = bounds.lower[s] + i * step
        hi[s] = bounds.upper[s] - (S - 1 - i) * step
        if i == S - 1:
            hi[s] = bounds.upper[s]
        parts.append(Bounds(lo, hi))
    return SubspaceSet(tuple(parts), s)


@dataclass(frozen=True)
class SocParams:
    q_levels: int = 3
    theta0: float | np.ndarray = 1e-6

    def __post_init__(self):
        if self.q_levels < 2:
            raise ValueError("q_levels must be at least 2")
        if np.any(np.asarray(self.theta0) <= 0):
            raise ValueError("theta0 must be positive")


def soc_crossover(p1, p2, params: SocParams) -> np.ndarray:
    """Orthogonal crossover of two parents; returns the children as rows.

    Every dimension where the parents differ by more than ``theta0`` is one
    factor with Q evenly spaced levels between the two parent values; the
    children are the level combinations listed by L_M(Q^t). Dimensions where
    the parents agree take the parents' midpoint. With no differing
    dimension the parents themselves are returned.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError("parents must have the same length")
    Q = params.q_levels
    lo = np.minimum(p1, p2)
    hi = np.maximum(p1, p2)
    factors = np.flatnonzero(np.abs(p1 - p2) > params.theta0)
    if factors.size == 0:
        return np.vstack([p1, p2])
    oa = construct_orthogonal_array(Q, factors.size)
    levels = np.arange(Q) / (Q - 1)
    beta = lo[factors, None] + levels[None, :] * (hi - lo)[factors, None]
    beta[:, -1] = hi[factors]
    children = np.tile((p1 + p2) / 2, (oa.rows_m, 1))
    children[:, factors] = beta[np.arange(factors.size), oa.cells - 1]
    return children


def _stable_unique_rows(X: np.ndarray) -> np.ndarray:
    _, first = np.unique(X, axis=0, return_index=True)
    return X[np.sort(first)]


def orthogonal_pool(problem: ProblemSpec, S: int, Q: int, theta0_rel: float = 1e-4) -> np.ndarray:
    """Distinct children of orthogonal crossover between the corners of each subspace."""
    params = SocParams(q_levels=Q, theta0=theta0_rel * problem.bounds.width)
    pieces = [soc_crossover(b.lower, b.upper, params) for b in segment_space(problem.bounds, S).subspaces]
    return _stable_unique_rows(np.vstack(pieces))


def select_by_rank_and_crowding(rank: np.ndarray, crowding: np.ndarray, n: int) -> np.ndarray:
    """First ``n`` indices under a non-dominated sort of (rank minimized, crowding maximized).

    The last admitted front is cut by descending crowding, then input order.
    """
    objectives = np.column_stack([rank.astype(float), -crowding])
    chosen = []
    for front in fast_nondominated_sort(objectives).fronts:
        room = n - len(chosen)
        if room <= 0:
            break
        order = np.argsort(-crowding[front], kind="stable")
        chosen.extend(front[order[:room]].tolist())
    return np.array(chosen, dtype=int)


def orthogonal_initialize(
    problem: ProblemSpec,
    n: int,
    S: int = 4,
    Q0: int = 3,
    theta0_rel: float = 1e-4,
    rng: np.random.Generator | None = None,
    max_pool: int = 200_000,
    pool_factor: int = 4,
) -> Population:
    """Initial population drawn from an orthogonal design over the search box.

    The pool is the set of distinct orthogonal-crossover children of every
    subspace's corner pair. While the pool is smaller than ``pool_factor * n``
    the box is cut into twice as many subspaces, so the candidate set below
    can actually reach 4n. Only if refinement stalls or passes ``max_pool``
    with fewer than n points are uniform random points added (needs ``rng``).
    Whole fronts of the pool are collected until there are at least 4n
    candidates, crowding is computed over that candidate set, and the best
    ``n`` under (rank, crowding) are kept. ``pop.meta`` records what happened.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    S_used = S
    X = orthogonal_pool(problem, S_used, Q0, theta0_rel)
    while len(X) < pool_factor * n:
        bigger = orthogonal_pool(problem, S_used * 2, Q0, theta0_rel)
        if len(bigger) > max_pool or len(bigger) <= len(X):
            break
        S_used *= 2
        X = bigger
    meta = {"subspaces_requested": S, "subspaces_used": S_used, "q_levels": Q0, "pool_size": len(X),
            "random_top_up": 0}
    if len(X) < n:
        if rng is None:
            raise ValueError(f"orthogonal pool has only {len(X)} points for n={n}; pass rng to top up")
        extra = rng.uniform(problem.bounds.lower, problem.bounds.upper, size=(n - len(X), problem.n_vars))
        X = np.vstack([X, extra])
        meta["random_top_up"] = len(extra)

    F = evaluate(problem, X)
    part = fast_nondominated_sort(F)
    candidates = []
    for front in part.fronts:
        candidates.extend(front.tolist())
        if len(candidates) >= 4 * n:
            break
    candidates = np.array(candidates, dtype=int)
    meta["candidate_size"] = len(candidates)
    rank = part.rank[candidates]
    crowding = crowding_distance_assignment(F[candidates])
    keep = candidates[select_by_rank_and_crowding(rank, crowding, n)]

    pop = sort_population(Population(X=X[keep], F=F[keep]))
    pop.meta = meta
    return pop
