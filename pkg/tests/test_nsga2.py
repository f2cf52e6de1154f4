import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import brute_fronts
from otnsga.config import RunConfig, VariationParams
from otnsga.core import Bounds, Individual, Population, dominance_matrix
from otnsga.metrics import gd
from otnsga.nsga2 import (
    binary_tournament,
    crowded_compare,
    crowding_distance_assignment,
    environmental_selection,
    fast_nondominated_sort,
    polynomial_mutation,
    random_population,
    run_nsga2,
    sbx_crossover,
    solution_set,
    sort_population,
)
from otnsga.problems import make_problem, sample_true_front


def _fronts(F):
    return [sorted(f.tolist()) for f in fast_nondominated_sort(np.asarray(F, float)).fronts]


def test_sort_examples():
    assert _fronts([(1, 1), (2, 2), (3, 3)]) == [[0], [1], [2]]
    assert _fronts([(1, 2), (2, 1), (3, 3)]) == [[0, 1], [2]]
    assert _fronts([(5, 5)]) == [[0]]
    empty = fast_nondominated_sort(np.empty((0, 2)))
    assert empty.fronts == [] and len(empty.rank) == 0


@settings(max_examples=60)
@given(arrays(float, st.tuples(st.integers(1, 40), st.integers(2, 3)), elements=st.integers(0, 5).map(float)))
def test_sort_matches_oracle_and_partition_invariants(F):
    part = fast_nondominated_sort(F)
    assert [sorted(f.tolist()) for f in part.fronts] == brute_fronts(F.tolist())
    D = dominance_matrix(F)
    for k, front in enumerate(part.fronts):
        assert np.all(part.rank[front] == k)
        assert not D[np.ix_(front, front)].any()
        if k:
            assert D[np.ix_(part.fronts[k - 1], front)].any(axis=0).all()


def test_crowding_examples():
    d = crowding_distance_assignment([(0, 2), (1, 1), (2, 0)])
    assert d[1] == 2.0 and np.isinf(d[0]) and np.isinf(d[2])
    assert np.all(np.isinf(crowding_distance_assignment([(0, 1), (1, 0)])))
    # unequal spacing on a line: f1 at 0, 1, 3, 6 with f2 = 6 - f1
    d = crowding_distance_assignment([(0, 6), (1, 5), (3, 3), (6, 0)])
    assert d[1] == pytest.approx(2 * (3 - 0) / 6)
    assert d[2] == pytest.approx(2 * (6 - 1) / 6)


def test_crowding_degenerate_objective_adds_nothing():
    d = crowding_distance_assignment([(0, 1), (1, 1), (2, 1), (4, 1)])
    assert d[1] == pytest.approx((2 - 0) / 4) and d[2] == pytest.approx((4 - 1) / 4)


@settings(max_examples=60)
@given(arrays(float, st.tuples(st.integers(1, 15), st.integers(2, 3)), elements=st.integers(0, 4).map(float)),
       st.randoms(use_true_random=False))
def test_crowding_permutation_invariant(F, rnd):
    perm = list(range(len(F)))
    rnd.shuffle(perm)
    d = crowding_distance_assignment(F)
    dp = crowding_distance_assignment(F[perm])
    # duplicate rows may swap values between themselves, so compare per distinct vector
    by_vec = {}
    for row, v in zip(map(tuple, F), d):
        by_vec.setdefault(row, []).append(v)
    by_vec_p = {}
    for row, v in zip(map(tuple, F[perm]), dp):
        by_vec_p.setdefault(row, []).append(v)
    assert {k: sorted(v) for k, v in by_vec.items()} == {k: sorted(v) for k, v in by_vec_p.items()}
    assert np.all(d >= 0)


def test_crowded_compare():
    a = Individual(np.zeros(1), np.zeros(2), rank=0, crowding=0.1)
    b = Individual(np.zeros(1), np.zeros(2), rank=2, crowding=np.inf)
    assert crowded_compare(a, b) is a and crowded_compare(b, a) is a
    c = Individual(np.zeros(1), np.zeros(2), rank=1, crowding=np.inf)
    d = Individual(np.zeros(1), np.zeros(2), rank=1, crowding=1.3)
    assert crowded_compare(c, d) is c and crowded_compare(d, c) is c
    e = Individual(np.ones(1), np.zeros(2), rank=1, crowding=1.3)
    assert crowded_compare(d, e) is d and crowded_compare(e, d) is e
    with pytest.raises(ValueError):
        crowded_compare(Individual(np.zeros(1), np.zeros(2)), d)


def _sorted_pop(F):
    F = np.asarray(F, float)
    return sort_population(Population(np.arange(len(F), dtype=float)[:, None], F))


def test_tournament_singleton_and_determinism():
    pop = _sorted_pop([(1, 1)])
    assert binary_tournament(pop, np.random.default_rng(0)) == 0
    pop = _sorted_pop(np.random.default_rng(1).uniform(size=(30, 2)))
    a = binary_tournament(pop, np.random.default_rng(5), size=50)
    b = binary_tournament(pop, np.random.default_rng(5), size=50)
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        binary_tournament(Population(np.zeros((2, 1)), np.zeros((2, 2))), np.random.default_rng(0))


def test_tournament_selection_pressure():
    n = 10
    F = np.vstack([[0.0, 0.0], np.tile([5.0, 5.0], (n - 1, 1)) + np.arange(n - 1)[:, None]])
    pop = _sorted_pop(F)
    draws = 10_000
    wins = np.sum(binary_tournament(pop, np.random.default_rng(2), size=draws) == 0)
    p = 1 - ((n - 1) / n) ** 2
    assert wins >= draws * p - 3 * np.sqrt(draws * p * (1 - p))


BOX = Bounds(np.zeros(5), np.ones(5))


def test_sbx_gated_off_and_identical_parents():
    rng = np.random.default_rng(0)
    p1, p2 = rng.uniform(size=5), rng.uniform(size=5)
    c1, c2 = sbx_crossover(p1, p2, VariationParams(p_crossover=0.0), BOX, rng)
    assert np.array_equal(c1, p1) and np.array_equal(c2, p2)
    c1, c2 = sbx_crossover(p1, p1, VariationParams(p_crossover=1.0), BOX, rng)
    assert np.array_equal(c1, p1) and np.array_equal(c2, p1)


def test_sbx_mean_preserving_and_in_bounds():
    rng = np.random.default_rng(3)
    trials = 100_000
    P1 = np.tile([0.2, 0.4, 0.45, 0.1, 0.9], (trials, 1))
    P2 = np.tile([0.6, 0.5, 0.55, 0.3, 0.7], (trials, 1))
    C1, C2 = sbx_crossover(P1, P2, VariationParams(p_crossover=1.0), BOX, rng)
    assert BOX.contains(C1) and BOX.contains(C2)
    mid = (P1[0] + P2[0]) / 2
    child_mean = np.vstack([C1, C2]).mean(axis=0)
    assert np.all(np.abs(child_mean - mid) <= 0.01 * mid)


def test_mutation_gate_and_rate():
    rng = np.random.default_rng(4)
    box = Bounds(np.zeros(30), np.ones(30))
    x = rng.uniform(size=30)
    assert np.array_equal(polynomial_mutation(x, VariationParams(p_mutation=0.0), box, rng), x)
    X = np.tile(x, (10_000, 1))
    Y = polynomial_mutation(X, VariationParams(p_mutation=1.0), box, rng)
    assert box.contains(Y)
    changed = (Y != X).sum(axis=1)
    # binomial(30, 1/30): mean 1, variance 29/30 per call
    assert abs(changed.mean() - 1.0) <= 3 * np.sqrt((29 / 30) / 10_000)


def test_mutation_stays_in_bounds_at_edges():
    rng = np.random.default_rng(5)
    box = Bounds(np.zeros(3), np.ones(3))
    X = np.array([[0.0, 1.0, 0.5]] * 1000)
    Y = polynomial_mutation(X, VariationParams(p_mutation=1.0), box, rng)
    assert box.contains(Y)


def test_environmental_selection_examples():
    # fronts sized [4, 2]
    F = [(0, 3), (1, 2), (2, 1), (3, 0), (4, 4), (5, 5)]
    got = environmental_selection(_sorted_pop(F), 4)
    assert sorted(got.X[:, 0].tolist()) == [0, 1, 2, 3]
    # fronts sized [3, 3]; the middle of front 1 has finite crowding, its ends are infinite
    F = [(0, 2), (1, 1), (2, 0), (1, 4), (2, 3.5), (4, 2)]
    got = environmental_selection(_sorted_pop(F), 4)
    assert sorted(got.X[:, 0].tolist()) == [0, 1, 2, 3]
    pop = _sorted_pop(F)
    assert np.array_equal(environmental_selection(pop, 6).X, pop.X)
    with pytest.raises(ValueError):
        environmental_selection(pop, 7)


@settings(max_examples=40)
@given(arrays(float, st.tuples(st.integers(2, 30), st.just(2)), elements=st.integers(0, 6).map(float)),
       st.data())
def test_environmental_selection_properties(F, data):
    n = data.draw(st.integers(1, len(F)))
    combined = _sorted_pop(F)
    kept = environmental_selection(combined, n)
    assert len(kept) == n
    ids = kept.X[:, 0].astype(int)
    rejected = np.setdiff1d(np.arange(len(F)), ids)
    if rejected.size:
        assert combined.rank[ids].max() <= combined.rank[rejected].min()
        split = combined.rank[ids].max()
        kr = ids[combined.rank[ids] == split]
        rr = rejected[combined.rank[rejected] == split]
        if rr.size:
            assert combined.crowding[kr].min() >= combined.crowding[rr].max()
        # no survivor is dominated by a discarded member
        D = dominance_matrix(F)
        assert not D[np.ix_(rejected, ids)].any()


def test_solution_set_is_front_zero():
    pop = _sorted_pop([(0, 1), (1, 0), (1, 1), (0, 1)])
    assert sorted(map(tuple, solution_set(pop))) == [(0, 1), (1, 0)]


def test_run_nsga2_deterministic_and_trace_length():
    cfg = RunConfig("ZDT1", algorithm="nsga2", pop_size=20, generations=15, seed=9)
    a = run_nsga2("ZDT1", cfg)
    b = run_nsga2("ZDT1", cfg)
    assert a.trace.shape == (16, 3)
    assert a.trace.tobytes() == b.trace.tobytes()
    assert a.final_X.tobytes() == b.final_X.tobytes()
    assert a.resolved["eta_c"] == 20 and a.resolved["per_gene_mutation_rate"] == 1 / 30


def test_run_nsga2_zero_generations():
    cfg = RunConfig("ZDT2", algorithm="nsga2", pop_size=10, generations=0, seed=1)
    rep = run_nsga2("ZDT2", cfg)
    init = random_population(make_problem("ZDT2"), 10, np.random.default_rng(1))
    assert rep.trace.shape == (1, 3)
    assert np.array_equal(rep.final_X, init.X)


def test_run_nsga2_sch_converges():
    cfg = RunConfig("SCH", algorithm="nsga2", pop_size=20, generations=50, seed=0)
    rep = run_nsga2("SCH", cfg)
    assert rep.trace[-1, 0] < rep.trace[0, 0]
    assert gd(rep.final_F, sample_true_front("SCH")) < gd(
        random_population(make_problem("SCH"), 20, np.random.default_rng(0)).F, sample_true_front("SCH"))


def test_generations_keep_front_zero_nondominated():
    cfg = RunConfig("ZDT3", algorithm="nsga2", pop_size=20, generations=5, seed=2)
    rep = run_nsga2("ZDT3", cfg)
    S = solution_set(Population(rep.final_X, rep.final_F))
    assert not dominance_matrix(S).any()
