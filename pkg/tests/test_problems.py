import numpy as np
import pytest

from otnsga.core import evaluate
from otnsga.problems import (
    PROBLEM_NAMES,
    make_problem,
    nondominated_mask,
    read_front_file,
    sample_true_front,
    write_front_file,
)

# standard dimensions and boxes, written out independently of the registry
EXPECTED = {
    "SCH": (1, 2, -1e3, 1e3), "FON": (3, 2, -4, 4), "POL": (2, 2, -np.pi, np.pi), "KUR": (3, 2, -5, 5),
    "ZDT1": (30, 2, 0, 1), "ZDT2": (30, 2, 0, 1), "ZDT3": (30, 2, 0, 1), "ZDT4": (10, 2, None, None),
    "ZDT6": (10, 2, 0, 1),
    "DTLZ1": (7, 3, 0, 1), "DTLZ2": (12, 3, 0, 1), "DTLZ3": (12, 3, 0, 1), "DTLZ4": (12, 3, 0, 1),
    "DTLZ5": (12, 3, 0, 1), "DTLZ6": (12, 3, 0, 1), "DTLZ7": (22, 3, 0, 1),
}
EXPECTED.update({f"UF{i}": (30, 3 if i >= 8 else 2, None, None) for i in range(1, 11)})


def test_twenty_six_problems():
    assert len(PROBLEM_NAMES) == 26
    assert set(PROBLEM_NAMES) == set(EXPECTED)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_dimensions_and_bounds(name):
    n, m, lo, hi = EXPECTED[name]
    p = make_problem(name)
    assert (p.n_vars, p.n_objectives) == (n, m)
    if lo is not None:
        assert np.all(p.bounds.lower == lo) and np.all(p.bounds.upper == hi)


def test_zdt4_and_uf_boxes():
    p = make_problem("ZDT4")
    assert p.bounds.lower[0] == 0 and p.bounds.upper[0] == 1
    assert np.all(p.bounds.lower[1:] == -5) and np.all(p.bounds.upper[1:] == 5)
    uf1 = make_problem("UF1")
    assert uf1.bounds.lower[0] == 0 and np.all(uf1.bounds.lower[1:] == -1)
    uf4 = make_problem("UF4")
    assert np.all(uf4.bounds.lower[1:] == -2) and np.all(uf4.bounds.upper[1:] == 2)
    uf8 = make_problem("UF8")
    assert np.all(uf8.bounds.lower[2:] == -2) and uf8.bounds.upper[1] == 1


def test_make_problem_case_and_errors():
    assert make_problem("zdt1").name == "ZDT1"
    with pytest.raises(ValueError, match="ZDT1"):
        make_problem("ZDT5")


@pytest.mark.parametrize("name", PROBLEM_NAMES)
def test_random_points_are_finite(name):
    p = make_problem(name)
    X = np.random.default_rng(1).uniform(p.bounds.lower, p.bounds.upper, size=(1000, p.n_vars))
    F = evaluate(p, X)
    assert F.shape == (1000, p.n_objectives)
    assert np.all(np.isfinite(F))


# independent scalar versions of a few published formulas
def _sch(x):
    return [x[0] ** 2, (x[0] - 2) ** 2]


def _zdt1(x):
    g = 1 + 9 * sum(x[1:]) / (len(x) - 1)
    return [x[0], g * (1 - (x[0] / g) ** 0.5)]


def _zdt3(x):
    g = 1 + 9 * sum(x[1:]) / (len(x) - 1)
    h = 1 - (x[0] / g) ** 0.5 - (x[0] / g) * np.sin(10 * np.pi * x[0])
    return [x[0], g * h]


def _zdt6(x):
    f1 = 1 - np.exp(-4 * x[0]) * np.sin(6 * np.pi * x[0]) ** 6
    g = 1 + 9 * (sum(x[1:]) / (len(x) - 1)) ** 0.25
    return [f1, g * (1 - (f1 / g) ** 2)]


def _dtlz1(x, m=3):
    k = len(x) - m + 1
    g = 100 * (k + sum((xi - 0.5) ** 2 - np.cos(20 * np.pi * (xi - 0.5)) for xi in x[m - 1:]))
    return [0.5 * x[0] * x[1] * (1 + g), 0.5 * x[0] * (1 - x[1]) * (1 + g), 0.5 * (1 - x[0]) * (1 + g)]


def _dtlz2(x, m=3):
    g = sum((xi - 0.5) ** 2 for xi in x[m - 1:])
    a, b = x[0] * np.pi / 2, x[1] * np.pi / 2
    return [(1 + g) * np.cos(a) * np.cos(b), (1 + g) * np.cos(a) * np.sin(b), (1 + g) * np.sin(a)]


def _kur(x):
    f1 = sum(-10 * np.exp(-0.2 * np.sqrt(x[i] ** 2 + x[i + 1] ** 2)) for i in range(len(x) - 1))
    f2 = sum(abs(xi) ** 0.8 + 5 * np.sin(xi**3) for xi in x)
    return [f1, f2]


def _uf1(x):
    n = len(x)
    j = np.arange(2, n + 1)
    y = x[1:] - np.sin(6 * np.pi * x[0] + j * np.pi / n)
    odd, even = j % 2 == 1, j % 2 == 0
    return [x[0] + 2 * np.mean(y[odd] ** 2), 1 - np.sqrt(x[0]) + 2 * np.mean(y[even] ** 2)]


@pytest.mark.parametrize(
    "name, oracle",
    [("SCH", _sch), ("ZDT1", _zdt1), ("ZDT3", _zdt3), ("ZDT6", _zdt6), ("DTLZ1", _dtlz1), ("DTLZ2", _dtlz2),
     ("KUR", _kur), ("UF1", _uf1)],
)
def test_evaluator_matches_scalar_oracle(name, oracle):
    p = make_problem(name)
    X = np.random.default_rng(7).uniform(p.bounds.lower, p.bounds.upper, size=(25, p.n_vars))
    F = evaluate(p, X)
    for x, f in zip(X, F):
        assert np.allclose(f, oracle(x), rtol=1e-12, atol=1e-12)


def test_zdt1_front_points_satisfy_relation():
    s = sample_true_front("ZDT1", 3)
    assert s.source == "analytic"
    f1, f2 = s.points.T
    assert np.allclose(f2, 1 - np.sqrt(f1), atol=1e-15)
    assert s.points[0].tolist() == [0.0, 1.0] and s.points[-1].tolist() == [1.0, 0.0]


def test_sch_front_endpoints():
    s = sample_true_front("SCH", 2)
    assert sorted(map(tuple, s.points)) == [(0.0, 4.0), (4.0, 0.0)]


def test_front_count_validation_and_readonly():
    with pytest.raises(ValueError):
        sample_true_front("ZDT1", 1)
    s = sample_true_front("ZDT2", 50)
    with pytest.raises(ValueError):
        s.points[0, 0] = 3.0


def _brute_nondominated(F):
    n = len(F)
    keep = []
    for i in range(n):
        dominated = any(np.all(F[j] <= F[i]) and np.any(F[j] < F[i]) for j in range(n) if j != i)
        keep.append(not dominated)
    return np.array(keep)


@pytest.mark.parametrize("m", [2, 3])
def test_nondominated_mask_matches_brute_force(m):
    rng = np.random.default_rng(m)
    for _ in range(20):
        F = rng.integers(0, 6, size=(40, m)).astype(float)
        got = nondominated_mask(F)
        ref = _brute_nondominated(F)
        # duplicates of a non-dominated vector are kept once
        assert set(map(tuple, F[got])) == set(map(tuple, F[ref]))
        assert len(F[got]) == len(set(map(tuple, F[got])))


@pytest.mark.parametrize("name", PROBLEM_NAMES)
def test_fronts_are_nondominated_and_reproducible(name):
    s = sample_true_front(name, 200 if name != "UF5" else 21)
    assert len(s) >= 2
    assert np.all(nondominated_mask(s.points))
    if s.preimages is not None:
        p = make_problem(name)
        assert p.bounds.contains(s.preimages)
        assert np.allclose(evaluate(p, s.preimages), s.points, rtol=0, atol=1e-12)
    else:
        assert s.source == "file"


def test_uf5_front_is_21_points():
    s = sample_true_front("UF5", 1000)
    assert len(s) == 21
    assert np.allclose(s.points.sum(axis=1), 1.0)


def test_front_file_round_trip(tmp_path):
    P = np.array([[0.1, 2.0], [1.0 / 3.0, 1e-17]])
    path = tmp_path / "x.front"
    write_front_file(path, P, comment="two points\nsecond line")
    assert path.read_text().startswith("# two points\n# second line\n")
    assert np.array_equal(read_front_file(path), P)


def test_bundled_fronts_present():
    for name in ("POL", "KUR"):
        s = sample_true_front(name, 1000)
        assert s.source == "file" and len(s) == 1000
