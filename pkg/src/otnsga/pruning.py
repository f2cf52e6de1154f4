"""Adaptive clustering pruning and the OTNSGA-II loop.

After environmental selection the population is clustered with k-means on
(decision coordinates, rank, crowding). Within each cluster the mean
pairwise similarity P_k sets how many members survive,
``max(1, ceil((1 - delta * P_k) * size))``, and the survivors are the best
members under the crowded comparison (rank first, crowding second).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import PruneParams, RunConfig, RunReport
from .core import Population, ProblemSpec
from .nsga2 import evolve, sort_population
from .orthogonal import orthogonal_initialize
from .problems import make_problem


def _minmax_columns(A: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lo = A.min(axis=0)
    hi = A.max(axis=0)
    span = hi - lo
    Z = np.divide(A - lo, span, out=np.zeros_like(A), where=span > 0)
    return Z, lo, hi


@dataclass(frozen=True)
class FeatureMatrix:
    rows: np.ndarray  # (n, n_vars + 2), entries in [0, 1]
    lower: np.ndarray  # per-column minimum before scaling
    upper: np.ndarray


def capped_crowding(crowding: np.ndarray) -> np.ndarray:
    """Replace infinite crowding by twice the largest finite value (1.0 if none is positive)."""
    c = np.asarray(crowding, dtype=float)
    finite = c[np.isfinite(c)]
    cap = 2.0 * finite.max() if finite.size and finite.max() > 0 else 1.0
    return np.where(np.isfinite(c), c, cap)


def build_features(pop: Population) -> FeatureMatrix:
    """Min-max scaled [x_1..x_N, rank, crowding] per individual; constant columns become 0."""
    if not pop.is_sorted:
        raise ValueError("population must be sorted before clustering")
    crowd = np.asarray(pop.crowding, dtype=float)
    all_inf = not np.any(np.isfinite(crowd))
    raw = np.column_stack([pop.X, pop.rank.astype(float), capped_crowding(crowd)])
    Z, lo, hi = _minmax_columns(raw)
    if all_inf:
        Z[:, -1] = 1.0
    return FeatureMatrix(rows=Z, lower=lo, upper=hi)


@dataclass
class KMeansResult:
    labels: np.ndarray
    centroids: np.ndarray
    inertia_history: list = field(default_factory=list)
    n_iter: int = 0
    n_repairs: int = 0
    k_reduced: bool = False

    @property
    def k(self) -> int:
        return len(self.centroids)


def _sq_dist(Z, C):
    return np.sum((Z[:, None, :] - C[None, :, :]) ** 2, axis=2)


def _kmeans_pp(Z, k, rng):
    n = len(Z)
    centers = [int(rng.integers(n))]
    d2 = np.sum((Z - Z[centers[0]]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            nxt = int(rng.choice(n, p=d2 / total))
        else:
            nxt = int(rng.integers(n))
        centers.append(nxt)
        d2 = np.minimum(d2, np.sum((Z - Z[nxt]) ** 2, axis=1))
    return Z[centers].copy()


def _assign(Z, C):
    """Nearest-centroid labels; empty clusters take the point farthest from its centroid."""
    D = _sq_dist(Z, C)
    labels = np.argmin(D, axis=1)
    repairs = 0
    k = len(C)
    for c in range(k):
        if np.any(labels == c):
            continue
        counts = np.bincount(labels, minlength=k)
        own = D[np.arange(len(Z)), labels]
        own = np.where(counts[labels] > 1, own, -1.0)
        p = int(np.argmax(own))
        labels[p] = c
        C[c] = Z[p]
        D[:, c] = np.sum((Z - Z[p]) ** 2, axis=1)
        repairs += 1
    return labels, repairs


def _inertia(Z, labels, C):
    return float(np.sum((Z - C[labels]) ** 2))


def kmeans(features, params: PruneParams, rng: np.random.Generator, k: int | None = None) -> KMeansResult:
    """Lloyd's algorithm with k-means++ seeding; always returns k nonempty clusters.

    ``k`` defaults to ``params.clusters_for(n)``; it is lowered to the row
    count when there are fewer rows than clusters.
    """
    Z = np.asarray(getattr(features, "rows", features), dtype=float)
    n = len(Z)
    k = params.clusters_for(n) if k is None else k
    reduced = k > n
    k = min(k, n)
    C = _kmeans_pp(Z, k, rng)
    labels, repairs = _assign(Z, C)
    history = [_inertia(Z, labels, C)]
    it = 0
    for it in range(1, params.kmeans_max_iter + 1):
        newC = np.array([Z[labels == c].mean(axis=0) for c in range(k)])
        shift = float(np.max(np.linalg.norm(newC - C, axis=1)))
        C = newC
        labels, r = _assign(Z, C)
        repairs += r
        history.append(_inertia(Z, labels, C))
        if shift < params.kmeans_tol:
            break
    return KMeansResult(labels, C, history, it, repairs, reduced)


def similarity_matrix(pop: Population) -> np.ndarray:
    """p_ij = 1 - e_ij / e_max over min-max scaled (decision, objective) vectors."""
    Z, _, _ = _minmax_columns(np.column_stack([pop.X, pop.F]))
    diff = Z[:, None, :] - Z[None, :, :]
    E = np.sqrt(np.sum(diff * diff, axis=2))
    e_max = E.max() if E.size else 0.0
    if e_max == 0:
        return np.ones_like(E)
    return 1.0 - E / e_max


def pairwise_similarity(i: int, j: int, pop: Population) -> float:
    if i == j:
        raise ValueError("similarity is defined between two distinct individuals")
    return float(similarity_matrix(pop)[i, j])


def intra_class_similarity(cluster, pop) -> float:
    """Mean of p_ij over the unordered pairs of a cluster; 0 for a singleton.

    ``cluster`` is a Cluster or an index array; ``pop`` is a Population or a
    precomputed similarity matrix.
    """
    members = np.asarray(getattr(cluster, "member_indices", cluster), dtype=int)
    m = len(members)
    if m < 2:
        return 0.0
    S = similarity_matrix(pop) if isinstance(pop, Population) else np.asarray(pop, dtype=float)
    sub = S[np.ix_(members, members)]
    iu = np.triu_indices(m, k=1)
    return float(math.fsum(sub[iu]) / (m * (m - 1) / 2))


def retention_count(p_k: float, delta: float, n_uk: int) -> int:
    """Members kept in a class of ``n_uk``: max(1, ceil((1 - delta * p_k) * n_uk))."""
    if not 0.0 <= p_k <= 1.0:
        raise ValueError(f"similarity must lie in [0, 1], got {p_k}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if n_uk < 1:
        raise ValueError("a class has at least one member")
    # the epsilon keeps exact products such as 0.85 * 10 from ceiling upward
    return max(1, math.ceil((1.0 - delta * p_k) * n_uk - 1e-9))


@dataclass(frozen=True)
class Cluster:
    member_indices: np.ndarray
    centroid: np.ndarray
    avg_similarity: float


def crowded_order(rank: np.ndarray, crowding: np.ndarray, members) -> np.ndarray:
    """Members sorted best first: rank ascending, crowding descending, then index."""
    members = np.asarray(members, dtype=int)
    order = np.lexsort((members, -crowding[members], rank[members]))
    return members[order]


def prune_population(pop: Population, params: PruneParams, rng: np.random.Generator) -> Population:
    """Cluster the population and drop the worst members of each cluster.

    Returns the concatenated survivors of every cluster (cluster order, best
    first within a cluster). ``meta`` carries the clusters and kept counts.
    """
    if not pop.is_sorted:
        sort_population(pop)
    if len(pop) < 2:
        return pop
    km = kmeans(build_features(pop), params, rng)
    S = similarity_matrix(pop)
    clusters, kept = [], []
    for c in range(km.k):
        members = np.flatnonzero(km.labels == c)
        p_k = intra_class_similarity(members, S)
        clusters.append(Cluster(members, km.centroids[c], p_k))
        n_k = retention_count(p_k, params.delta, len(members))
        kept.append(crowded_order(pop.rank, pop.crowding, members)[:n_k])
    out = pop.take(np.concatenate(kept))
    out.meta = {"clusters": clusters, "kept": [len(k) for k in kept], "kmeans": km}
    return out


def run_otnsga2(problem: ProblemSpec | str, config: RunConfig, rng: np.random.Generator | None = None) -> RunReport:
    """OTNSGA-II: orthogonal initial population plus pruning after every selection."""
    problem = make_problem(problem) if isinstance(problem, str) else problem
    rng = np.random.default_rng(config.seed) if rng is None else rng
    ip = config.init
    initial = orthogonal_initialize(problem, config.pop_size, ip.subspaces, ip.q_levels, ip.theta0, rng)
    flags = []
    if initial.meta.get("random_top_up"):
        flags.append(f"init_random_top_up={initial.meta['random_top_up']}")
    stats = {"k_reduced": 0, "pruned": 0}

    def prune(pop, rng):
        out = prune_population(sort_population(pop), config.prune, rng)
        stats["k_reduced"] += int(out.meta["kmeans"].k_reduced)
        stats["pruned"] += len(pop) - len(out)
        return out

    report = evolve(
        problem, config, rng, initial, after_selection=prune,
        resolved={
            "algorithm": "otnsga2",
            "initialization": "orthogonal design",
            "init_subspaces_used": initial.meta["subspaces_used"],
            "init_pool_size": initial.meta["pool_size"],
            "init_candidate_size": initial.meta["candidate_size"],
            "k_clusters": config.prune.clusters_for(config.pop_size),
            "delta": config.prune.delta,
            "similarity": "1 - normalized euclidean distance over (decision, objective)",
        },
        flags=flags,
    )
    report.resolved["pruned_total"] = stats["pruned"]
    if stats["k_reduced"]:
        report.flags.append(f"kmeans_k_reduced={stats['k_reduced']}")
    return report
