"""NSGA-II: non-dominated sorting, crowding distance, real-coded variation and the generational loop.

Random numbers are drawn from a ``numpy.random.Generator`` in a fixed order
per generation: tournament indices, crossover draws, mutation draws. Objective
evaluation consumes no randomness, so results depend only on the seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import RunConfig, RunReport, VariationParams
from .core import INF_CROWDING, Bounds, Individual, Population, ProblemSpec, clamp, dominance_matrix, evaluate
from .metrics import indicator_report
from .problems import make_problem, nondominated_mask, sample_true_front


@dataclass(frozen=True)
class FrontPartition:
    fronts: list
    rank: np.ndarray

    def __len__(self) -> int:
        return len(self.fronts)


def _objectives(pop) -> np.ndarray:
    return np.atleast_2d(np.asarray(getattr(pop, "F", pop), dtype=float))


def fast_nondominated_sort(pop) -> FrontPartition:
    """Partition a population (or an objective matrix) into ranked fronts, front 0 first."""
    F = _objectives(pop)
    n = len(F) if F.size else 0
    rank = np.full(n, -1, dtype=int)
    if n == 0:
        return FrontPartition([], rank)
    D = dominance_matrix(F)
    n_dominators = D.sum(axis=0)
    fronts = []
    current = np.flatnonzero(n_dominators == 0)
    k = 0
    while current.size:
        rank[current] = k
        fronts.append(current)
        n_dominators = n_dominators - D[current].sum(axis=0)
        n_dominators[rank >= 0] = -1
        current = np.flatnonzero(n_dominators == 0)
        k += 1
    return FrontPartition(fronts, rank)


def crowding_distance_assignment(front_objectives) -> np.ndarray:
    """Crowding distance of every member of one front.

    Per objective the front is sorted, both extremes get ``INF_CROWDING`` and
    interior members accumulate their neighbours' gap divided by the
    objective's range. An objective with zero range adds nothing. Ties are
    ordered lexicographically on the full objective vector so the result does
    not depend on input order.
    """
    F = _objectives(front_objectives)
    n, m = F.shape
    dist = np.zeros(n)
    if n <= 2:
        dist[:] = INF_CROWDING
        return dist
    boundary = np.zeros(n, dtype=bool)
    for j in range(m):
        keys = [F[:, c] for c in range(m - 1, -1, -1) if c != j] + [F[:, j]]
        order = np.lexsort(keys)
        vals = F[order, j]
        boundary[order[0]] = boundary[order[-1]] = True
        span = vals[-1] - vals[0]
        if span > 0:
            dist[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    dist[boundary] = INF_CROWDING
    return dist


def sort_population(pop: Population) -> Population:
    """Set rank and per-front crowding on ``pop`` in place and return it."""
    part = fast_nondominated_sort(pop.F)
    crowd = np.zeros(len(pop))
    for front in part.fronts:
        crowd[front] = crowding_distance_assignment(pop.F[front])
    pop.rank, pop.crowding = part.rank, crowd
    return pop


def crowded_compare(a: Individual, b: Individual) -> Individual:
    """Lower rank wins, then larger crowding; a full tie goes to ``a``."""
    if not (a.is_sorted and b.is_sorted):
        raise ValueError("crowded comparison needs rank and crowding on both individuals")
    if a.rank != b.rank:
        return a if a.rank < b.rank else b
    return b if b.crowding > a.crowding else a


def _tournament_winners(rank, crowding, pairs: np.ndarray) -> np.ndarray:
    i, j = pairs[:, 0], pairs[:, 1]
    j_wins = (rank[j] < rank[i]) | ((rank[j] == rank[i]) & (crowding[j] > crowding[i]))
    return np.where(j_wins, j, i)


def binary_tournament(pop: Population, rng: np.random.Generator, size: int | None = None):
    """Index (or ``size`` indices) of crowded-comparison winners between two uniform draws."""
    if len(pop) == 0:
        raise ValueError("cannot select from an empty population")
    if not pop.is_sorted:
        raise ValueError("population must be sorted before selection")
    pairs = rng.integers(0, len(pop), size=(1 if size is None else size, 2))
    winners = _tournament_winners(pop.rank, pop.crowding, pairs)
    return int(winners[0]) if size is None else winners


def sbx_crossover(p1, p2, params: VariationParams, bounds: Bounds, rng: np.random.Generator):
    """Bounded simulated binary crossover on one pair or on row-aligned batches of pairs.

    Each pair crosses with probability ``p_crossover``; inside a crossing pair
    each gene is recombined with probability 1/2 and the two children's genes
    are swapped with probability 1/2.
    """
    P1 = np.atleast_2d(np.asarray(p1, dtype=float))
    P2 = np.atleast_2d(np.asarray(p2, dtype=float))
    single = np.ndim(p1) == 1
    n, N = P1.shape
    lo, hi = bounds.lower, bounds.upper
    gate = rng.random(n) < params.p_crossover
    gene = rng.random((n, N)) < 0.5
    u = rng.random((n, N))
    swap = rng.random((n, N)) < 0.5

    y1 = np.minimum(P1, P2)
    y2 = np.maximum(P1, P2)
    gap = y2 - y1
    active = gate[:, None] & gene & (gap > 1e-14)
    safe_gap = np.where(active, gap, 1.0)
    e = 1.0 / (params.eta_c + 1.0)

    def spread(beta):
        alpha = 2.0 - beta ** -(params.eta_c + 1.0)
        ua = u * alpha
        return np.where(u <= 1.0 / alpha, ua**e, (1.0 / np.maximum(2.0 - ua, 1e-300)) ** e)

    bq1 = spread(1.0 + 2.0 * (y1 - lo) / safe_gap)
    bq2 = spread(1.0 + 2.0 * (hi - y2) / safe_gap)
    c1 = np.clip(0.5 * ((y1 + y2) - bq1 * gap), lo, hi)
    c2 = np.clip(0.5 * ((y1 + y2) + bq2 * gap), lo, hi)
    c1, c2 = np.where(swap, c2, c1), np.where(swap, c1, c2)

    C1 = np.where(active, c1, P1)
    C2 = np.where(active, c2, P2)
    C1, C2 = clamp(C1, bounds), clamp(C2, bounds)
    return (C1[0], C2[0]) if single else (C1, C2)


def polynomial_mutation(x, params: VariationParams, bounds: Bounds, rng: np.random.Generator):
    """Bounded polynomial mutation of one vector or a batch of row vectors.

    An individual is mutated with probability ``p_mutation``; a mutated
    individual perturbs each gene with probability 1/N.
    """
    X = np.atleast_2d(np.asarray(x, dtype=float))
    single = np.ndim(x) == 1
    n, N = X.shape
    lo, hi = bounds.lower, bounds.upper
    gate = rng.random(n) < params.p_mutation
    gene = rng.random((n, N)) < 1.0 / N
    u = rng.random((n, N))

    width = hi - lo
    d1 = (X - lo) / width
    d2 = (hi - X) / width
    power = 1.0 / (params.eta_m + 1.0)
    low = 2 * u + (1 - 2 * u) * (1 - d1) ** (params.eta_m + 1)
    high = 2 * (1 - u) + 2 * (u - 0.5) * (1 - d2) ** (params.eta_m + 1)
    deltaq = np.where(u <= 0.5, low**power - 1.0, 1.0 - high**power)
    Y = np.where(gate[:, None] & gene, np.clip(X + deltaq * width, lo, hi), X)
    return Y[0] if single else Y


def make_offspring(pop: Population, n: int, params: VariationParams, bounds: Bounds, rng) -> np.ndarray:
    """``n`` children (n even) by tournament, SBX and polynomial mutation."""
    parents = binary_tournament(pop, rng, size=n)
    P1, P2 = pop.X[parents[0::2]], pop.X[parents[1::2]]
    C1, C2 = sbx_crossover(P1, P2, params, bounds, rng)
    children = np.empty((n, pop.X.shape[1]))
    children[0::2], children[1::2] = C1, C2
    return polynomial_mutation(children, params, bounds, rng)


def environmental_selection(combined: Population, n: int) -> Population:
    """Keep ``n`` members: whole fronts in rank order, the split front by descending crowding."""
    if len(combined) < n:
        raise ValueError(f"cannot select {n} survivors from {len(combined)} individuals")
    sort_population(combined)
    chosen = []
    for k in range(int(combined.rank.max()) + 1):
        front = np.flatnonzero(combined.rank == k)
        room = n - len(chosen)
        if room <= 0:
            break
        if len(front) <= room:
            chosen.extend(front.tolist())
        else:
            # stable: among equal crowding the earlier index wins
            order = np.argsort(-combined.crowding[front], kind="stable")
            chosen.extend(front[order[:room]].tolist())
    return combined.take(np.array(chosen, dtype=int))


def solution_set(pop: Population) -> np.ndarray:
    """Objective vectors of the non-dominated members, the set the indicators are computed on."""
    return pop.F[nondominated_mask(pop.F)]


def random_population(problem: ProblemSpec, n: int, rng) -> Population:
    X = rng.uniform(problem.bounds.lower, problem.bounds.upper, size=(n, problem.n_vars))
    return Population(X=X, F=evaluate(problem, X))


def evolve(
    problem: ProblemSpec,
    config: RunConfig,
    rng: np.random.Generator,
    initial: Population,
    after_selection: Callable[[Population, np.random.Generator], Population] | None = None,
    resolved: dict | None = None,
    flags: list | None = None,
) -> RunReport:
    """Generational loop shared by NSGA-II and OTNSGA-II.

    Each generation sorts the current population (any size m), breeds
    ``pop_size`` children, selects ``pop_size`` survivors from the m + n pool
    and hands them to ``after_selection`` if given.
    """
    t0 = time.perf_counter()
    n = config.pop_size
    front = sample_true_front(problem.name, config.front_points)
    trace = np.empty((config.generations + 1, 3))
    pop = initial
    trace[0] = indicator_report(solution_set(pop), front).as_tuple()
    for g in range(1, config.generations + 1):
        sort_population(pop)
        Xc = make_offspring(pop, n, config.variation, problem.bounds, rng)
        children = Population(X=Xc, F=evaluate(problem, Xc))
        pop = environmental_selection(Population.concat(pop, children), n)
        if after_selection is not None:
            pop = after_selection(pop, rng)
        pop.generation = g
        trace[g] = indicator_report(solution_set(pop), front).as_tuple()
    sort_population(pop)
    final = indicator_report(solution_set(pop), front, reference_id=f"{problem.name}:{front.source}:{len(front)}")
    info = {
        "n_vars": problem.n_vars,
        "n_objectives": problem.n_objectives,
        "crossover": "SBX (bounded)",
        "mutation": "polynomial (bounded)",
        "eta_c": config.variation.eta_c,
        "eta_m": config.variation.eta_m,
        "p_crossover": config.variation.p_crossover,
        "p_mutation": config.variation.p_mutation,
        "per_gene_mutation_rate": 1.0 / problem.n_vars,
        "indicator_set": "non-dominated members",
        "reference_front": final.reference_id,
    }
    info.update(resolved or {})
    return RunReport(
        config=config,
        trace=trace,
        final_X=pop.X.copy(),
        final_F=pop.F.copy(),
        final=final,
        resolved=info,
        flags=list(flags or []),
        wall_clock=time.perf_counter() - t0,
    )


def run_nsga2(problem: ProblemSpec | str, config: RunConfig, rng: np.random.Generator | None = None) -> RunReport:
    """Plain NSGA-II from a uniform random initial population."""
    problem = make_problem(problem) if isinstance(problem, str) else problem
    rng = np.random.default_rng(config.seed) if rng is None else rng
    initial = random_population(problem, config.pop_size, rng)
    return evolve(problem, config, rng, initial, resolved={"algorithm": "nsga2", "initialization": "uniform random"})
