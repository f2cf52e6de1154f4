"""The 26 benchmark problems: SCH, FON, POL, KUR, ZDT1-4/6, DTLZ1-7, UF1-10.

Dimensions follow the usual published defaults (ZDT: 30 variables, 10 for
ZDT4/ZDT6; DTLZ with three objectives and k = 5/10/20; UF: 30 variables).
Each objective function takes a ``(n_points, n_vars)`` array.

True fronts are produced from known Pareto-set preimages wherever the set is
known in closed form. POL and KUR have no closed form; their fronts are read
from reference files under ``otnsga/data`` (see ``build_reference_front``).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from .core import Bounds, ProblemSpec, evaluate

PI = np.pi


# --- classical two-objective problems ----------------------------------------

def sch(X):
    x = X[:, 0]
    return np.column_stack([x**2, (x - 2.0) ** 2])


def fon(X):
    c = 1.0 / np.sqrt(X.shape[1])
    f1 = 1.0 - np.exp(-np.sum((X - c) ** 2, axis=1))
    f2 = 1.0 - np.exp(-np.sum((X + c) ** 2, axis=1))
    return np.column_stack([f1, f2])


def pol(X):
    x1, x2 = X[:, 0], X[:, 1]
    a1 = 0.5 * np.sin(1) - 2 * np.cos(1) + np.sin(2) - 1.5 * np.cos(2)
    a2 = 1.5 * np.sin(1) - np.cos(1) + 2 * np.sin(2) - 0.5 * np.cos(2)
    b1 = 0.5 * np.sin(x1) - 2 * np.cos(x1) + np.sin(x2) - 1.5 * np.cos(x2)
    b2 = 1.5 * np.sin(x1) - np.cos(x1) + 2 * np.sin(x2) - 0.5 * np.cos(x2)
    f1 = 1 + (a1 - b1) ** 2 + (a2 - b2) ** 2
    f2 = (x1 + 3) ** 2 + (x2 + 1) ** 2
    return np.column_stack([f1, f2])


def kur(X):
    f1 = np.sum(-10 * np.exp(-0.2 * np.sqrt(X[:, :-1] ** 2 + X[:, 1:] ** 2)), axis=1)
    f2 = np.sum(np.abs(X) ** 0.8 + 5 * np.sin(X**3), axis=1)
    return np.column_stack([f1, f2])


# --- ZDT ---------------------------------------------------------------------

def _zdt_g(X):
    return 1 + 9 * np.sum(X[:, 1:], axis=1) / (X.shape[1] - 1)


def zdt1(X):
    f1 = X[:, 0]
    g = _zdt_g(X)
    return np.column_stack([f1, g * (1 - np.sqrt(f1 / g))])


def zdt2(X):
    f1 = X[:, 0]
    g = _zdt_g(X)
    return np.column_stack([f1, g * (1 - (f1 / g) ** 2)])


def zdt3(X):
    f1 = X[:, 0]
    g = _zdt_g(X)
    h = 1 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10 * PI * f1)
    return np.column_stack([f1, g * h])


def zdt4(X):
    f1 = X[:, 0]
    rest = X[:, 1:]
    g = 1 + 10 * rest.shape[1] + np.sum(rest**2 - 10 * np.cos(4 * PI * rest), axis=1)
    return np.column_stack([f1, g * (1 - np.sqrt(f1 / g))])


def zdt6(X):
    x1 = X[:, 0]
    f1 = 1 - np.exp(-4 * x1) * np.sin(6 * PI * x1) ** 6
    g = 1 + 9 * (np.sum(X[:, 1:], axis=1) / (X.shape[1] - 1)) ** 0.25
    return np.column_stack([f1, g * (1 - (f1 / g) ** 2)])


# --- DTLZ (three objectives) -------------------------------------------------

def _dtlz_rastrigin_g(Xm):
    k = Xm.shape[1]
    return 100 * (k + np.sum((Xm - 0.5) ** 2 - np.cos(20 * PI * (Xm - 0.5)), axis=1))


def _sphere(theta1, theta2, g):
    return np.column_stack([
        (1 + g) * np.cos(theta1) * np.cos(theta2),
        (1 + g) * np.cos(theta1) * np.sin(theta2),
        (1 + g) * np.sin(theta1),
    ])


def dtlz1(X):
    g = _dtlz_rastrigin_g(X[:, 2:])
    x1, x2 = X[:, 0], X[:, 1]
    return np.column_stack([
        0.5 * x1 * x2 * (1 + g),
        0.5 * x1 * (1 - x2) * (1 + g),
        0.5 * (1 - x1) * (1 + g),
    ])


def dtlz2(X):
    g = np.sum((X[:, 2:] - 0.5) ** 2, axis=1)
    return _sphere(X[:, 0] * PI / 2, X[:, 1] * PI / 2, g)


def dtlz3(X):
    g = _dtlz_rastrigin_g(X[:, 2:])
    return _sphere(X[:, 0] * PI / 2, X[:, 1] * PI / 2, g)


def dtlz4(X, alpha=100.0):
    g = np.sum((X[:, 2:] - 0.5) ** 2, axis=1)
    return _sphere(X[:, 0] ** alpha * PI / 2, X[:, 1] ** alpha * PI / 2, g)


def _dtlz_degenerate(X, g):
    theta1 = X[:, 0] * PI / 2
    theta2 = PI / (4 * (1 + g)) * (1 + 2 * g * X[:, 1])
    return _sphere(theta1, theta2, g)


def dtlz5(X):
    return _dtlz_degenerate(X, np.sum((X[:, 2:] - 0.5) ** 2, axis=1))


def dtlz6(X):
    return _dtlz_degenerate(X, np.sum(X[:, 2:] ** 0.1, axis=1))


def dtlz7(X):
    f1, f2 = X[:, 0], X[:, 1]
    g = 1 + 9 * np.mean(X[:, 2:], axis=1)
    h = 3 - (f1 / (1 + g) * (1 + np.sin(3 * PI * f1)) + f2 / (1 + g) * (1 + np.sin(3 * PI * f2)))
    return np.column_stack([f1, f2, (1 + g) * h])


# --- CEC 2009 UF -------------------------------------------------------------

def _uf2_index_sets(n):
    """0-based column indices of the odd (J1) and even (J2) variables, 1-based j >= 2."""
    j = np.arange(2, n + 1)
    return j[j % 2 == 1] - 1, j[j % 2 == 0] - 1


def _uf3_index_sets(n):
    j = np.arange(3, n + 1)
    return (j[(j - 1) % 3 == 0] - 1, j[(j - 2) % 3 == 0] - 1, j[j % 3 == 0] - 1)


def _jpi_over_n(n):
    return np.arange(1, n + 1) * PI / n


def _uf_sine_residual(X):
    n = X.shape[1]
    return X - np.sin(6 * PI * X[:, [0]] + _jpi_over_n(n))


def _uf_cos_product_term(Y, idx):
    j = idx + 1
    yy = Y[:, idx]
    return 4 * np.sum(yy**2, axis=1) - 2 * np.prod(np.cos(20 * yy * PI / np.sqrt(j)), axis=1) + 2


def uf1(X):
    J1, J2 = _uf2_index_sets(X.shape[1])
    Y = _uf_sine_residual(X)
    x1 = X[:, 0]
    f1 = x1 + 2 * np.mean(Y[:, J1] ** 2, axis=1)
    f2 = 1 - np.sqrt(x1) + 2 * np.mean(Y[:, J2] ** 2, axis=1)
    return np.column_stack([f1, f2])


def _uf2_optimum(x1, n):
    jpn = _jpi_over_n(n)
    x1 = x1[:, None]
    amp = 0.3 * x1**2 * np.cos(24 * PI * x1 + 4 * jpn) + 0.6 * x1
    J1, _ = _uf2_index_sets(n)
    odd = np.zeros(n, dtype=bool)
    odd[J1] = True
    return np.where(odd, amp * np.cos(6 * PI * x1 + jpn), amp * np.sin(6 * PI * x1 + jpn))


def uf2(X):
    n = X.shape[1]
    J1, J2 = _uf2_index_sets(n)
    Y = X - _uf2_optimum(X[:, 0], n)
    x1 = X[:, 0]
    f1 = x1 + 2 * np.mean(Y[:, J1] ** 2, axis=1)
    f2 = 1 - np.sqrt(x1) + 2 * np.mean(Y[:, J2] ** 2, axis=1)
    return np.column_stack([f1, f2])


def _uf3_optimum(x1, n):
    j = np.arange(1, n + 1)
    return x1[:, None] ** (0.5 * (1.0 + 3.0 * (j - 2) / (n - 2)))


def uf3(X):
    n = X.shape[1]
    J1, J2 = _uf2_index_sets(n)
    Y = X - _uf3_optimum(X[:, 0], n)
    x1 = X[:, 0]
    f1 = x1 + 2.0 / len(J1) * _uf_cos_product_term(Y, J1)
    f2 = 1 - np.sqrt(x1) + 2.0 / len(J2) * _uf_cos_product_term(Y, J2)
    return np.column_stack([f1, f2])


def uf4(X):
    J1, J2 = _uf2_index_sets(X.shape[1])
    Y = np.abs(_uf_sine_residual(X))
    H = Y / (1 + np.exp(2 * Y))
    x1 = X[:, 0]
    f1 = x1 + 2 * np.mean(H[:, J1], axis=1)
    f2 = 1 - x1**2 + 2 * np.mean(H[:, J2], axis=1)
    return np.column_stack([f1, f2])


def uf5(X, N=10, eps=0.1):
    J1, J2 = _uf2_index_sets(X.shape[1])
    Y = _uf_sine_residual(X)
    H = 2 * Y**2 - np.cos(4 * PI * Y) + 1
    x1 = X[:, 0]
    ripple = (1 / (2 * N) + eps) * np.abs(np.sin(2 * N * PI * x1))
    f1 = x1 + ripple + 2 * np.mean(H[:, J1], axis=1)
    f2 = 1 - x1 + ripple + 2 * np.mean(H[:, J2], axis=1)
    return np.column_stack([f1, f2])


def uf6(X, N=2, eps=0.1):
    J1, J2 = _uf2_index_sets(X.shape[1])
    Y = _uf_sine_residual(X)
    x1 = X[:, 0]
    ripple = np.maximum(0.0, 2 * (1 / (2 * N) + eps) * np.sin(2 * N * PI * x1))
    f1 = x1 + ripple + 2.0 / len(J1) * _uf_cos_product_term(Y, J1)
    f2 = 1 - x1 + ripple + 2.0 / len(J2) * _uf_cos_product_term(Y, J2)
    return np.column_stack([f1, f2])


def uf7(X):
    J1, J2 = _uf2_index_sets(X.shape[1])
    Y = _uf_sine_residual(X)
    r = X[:, 0] ** 0.2
    f1 = r + 2 * np.mean(Y[:, J1] ** 2, axis=1)
    f2 = 1 - r + 2 * np.mean(Y[:, J2] ** 2, axis=1)
    return np.column_stack([f1, f2])


def _uf3obj_optimum(x1, x2, n):
    return 2 * x2[:, None] * np.sin(2 * PI * x1[:, None] + _jpi_over_n(n))


def uf8(X):
    n = X.shape[1]
    J1, J2, J3 = _uf3_index_sets(n)
    Y = X - _uf3obj_optimum(X[:, 0], X[:, 1], n)
    a, b = 0.5 * PI * X[:, 0], 0.5 * PI * X[:, 1]
    return np.column_stack([
        np.cos(a) * np.cos(b) + 2 * np.mean(Y[:, J1] ** 2, axis=1),
        np.cos(a) * np.sin(b) + 2 * np.mean(Y[:, J2] ** 2, axis=1),
        np.sin(a) + 2 * np.mean(Y[:, J3] ** 2, axis=1),
    ])


def uf9(X, eps=0.1):
    n = X.shape[1]
    J1, J2, J3 = _uf3_index_sets(n)
    Y = X - _uf3obj_optimum(X[:, 0], X[:, 1], n)
    x1, x2 = X[:, 0], X[:, 1]
    bump = np.maximum(0.0, (1 + eps) * (1 - 4 * (2 * x1 - 1) ** 2))
    return np.column_stack([
        0.5 * (bump + 2 * x1) * x2 + 2 * np.mean(Y[:, J1] ** 2, axis=1),
        0.5 * (bump - 2 * x1 + 2) * x2 + 2 * np.mean(Y[:, J2] ** 2, axis=1),
        1 - x2 + 2 * np.mean(Y[:, J3] ** 2, axis=1),
    ])


def uf10(X):
    n = X.shape[1]
    J1, J2, J3 = _uf3_index_sets(n)
    Y = X - _uf3obj_optimum(X[:, 0], X[:, 1], n)
    H = 4 * Y**2 - np.cos(8 * PI * Y) + 1
    a, b = 0.5 * PI * X[:, 0], 0.5 * PI * X[:, 1]
    return np.column_stack([
        np.cos(a) * np.cos(b) + 2 * np.mean(H[:, J1], axis=1),
        np.cos(a) * np.sin(b) + 2 * np.mean(H[:, J2], axis=1),
        np.sin(a) + 2 * np.mean(H[:, J3], axis=1),
    ])


# --- Pareto-set samplers -----------------------------------------------------
# Each takes a point budget m and returns candidate preimages; the front is
# their image, filtered to the non-dominated subset.

def _grid2(m):
    side = max(2, int(np.ceil(np.sqrt(m))))
    a, b = np.meshgrid(np.linspace(0, 1, side), np.linspace(0, 1, side), indexing="ij")
    return a.ravel(), b.ravel()


def _ps_sch(m, n):
    return np.linspace(0.0, 2.0, m)[:, None]


def _ps_fon(m, n):
    c = 1.0 / np.sqrt(n)
    return np.repeat(np.linspace(-c, c, m)[:, None], n, axis=1)


def _ps_zdt(m, n):
    X = np.zeros((m, n))
    X[:, 0] = np.linspace(0, 1, m)
    return X


def _ps_dtlz_sphere(m, n):
    a, b = _grid2(m)
    X = np.full((len(a), n), 0.5)
    X[:, 0], X[:, 1] = a, b
    return X


def _ps_dtlz4(m, n):
    # parameterize the angles, not x, so points spread over the octant
    a, b = _grid2(m)
    X = np.full((len(a), n), 0.5)
    X[:, 0], X[:, 1] = a ** (1 / 100), b ** (1 / 100)
    return X


def _ps_dtlz5(m, n):
    X = np.full((m, n), 0.5)
    X[:, 0] = np.linspace(0, 1, m)
    return X


def _ps_dtlz6(m, n):
    X = np.zeros((m, n))
    X[:, 0] = np.linspace(0, 1, m)
    return X


def _ps_dtlz7(m, n):
    a, b = _grid2(m)
    X = np.zeros((len(a), n))
    X[:, 0], X[:, 1] = a, b
    return X


def _ps_uf_sine(m, n, x1=None):
    x1 = np.linspace(0, 1, m) if x1 is None else x1
    X = np.sin(6 * PI * x1[:, None] + _jpi_over_n(n))
    X[:, 0] = x1
    return X


def _ps_uf2(m, n):
    x1 = np.linspace(0, 1, m)
    X = _uf2_optimum(x1, n)
    X[:, 0] = x1
    return X


def _ps_uf3(m, n):
    x1 = np.linspace(0, 1, m)
    X = _uf3_optimum(x1, n)
    X[:, 0] = x1
    return X


def _ps_uf5(m, n, N=10):
    return _ps_uf_sine(None, n, x1=np.arange(2 * N + 1) / (2 * N))


def _ps_uf6(m, n):
    x1 = np.concatenate([[0.0], np.linspace(0.25, 0.5, m // 2), np.linspace(0.75, 1.0, m - m // 2)])
    return _ps_uf_sine(None, n, x1=x1)


def _ps_uf7(m, n):
    return _ps_uf_sine(None, n, x1=np.linspace(0, 1, m) ** 5)


def _ps_uf3obj(m, n, x1=None, x2=None):
    if x1 is None:
        x1, x2 = _grid2(m)
    X = _uf3obj_optimum(x1, x2, n)
    X[:, 0], X[:, 1] = x1, x2
    return X


def _ps_uf9(m, n):
    a, b = _grid2(m)
    # fold [0, 1] onto [0, 0.25] u [0.75, 1]
    x1 = np.where(a < 0.5, a / 2, 0.75 + (a - 0.5) / 2)
    return _ps_uf3obj(None, n, x1, b)


@dataclass(frozen=True)
class _Entry:
    n_vars: int
    n_objectives: int
    lower: tuple
    upper: tuple
    objective: Callable
    pareto_set: Callable | None
    oversample: int = 1


def _box(n, lo, hi, head=()):
    """Bounds with the first ``len(head)`` variables set by ``head`` pairs."""
    lower = [h[0] for h in head] + [lo] * (n - len(head))
    upper = [h[1] for h in head] + [hi] * (n - len(head))
    return tuple(lower), tuple(upper)


def _entry(n, m, box, objective, ps, oversample=1):
    return _Entry(n, m, box[0], box[1], objective, ps, oversample)


_UNIT = (0.0, 1.0)

_REGISTRY: dict[str, _Entry] = {
    "SCH": _entry(1, 2, _box(1, -1e3, 1e3), sch, _ps_sch),
    "FON": _entry(3, 2, _box(3, -4.0, 4.0), fon, _ps_fon),
    "POL": _entry(2, 2, _box(2, -PI, PI), pol, None),
    "KUR": _entry(3, 2, _box(3, -5.0, 5.0), kur, None),
    "ZDT1": _entry(30, 2, _box(30, 0.0, 1.0), zdt1, _ps_zdt),
    "ZDT2": _entry(30, 2, _box(30, 0.0, 1.0), zdt2, _ps_zdt),
    "ZDT3": _entry(30, 2, _box(30, 0.0, 1.0), zdt3, _ps_zdt, oversample=50),
    "ZDT4": _entry(10, 2, _box(10, -5.0, 5.0, head=[_UNIT]), zdt4, _ps_zdt),
    "ZDT6": _entry(10, 2, _box(10, 0.0, 1.0), zdt6, _ps_zdt, oversample=50),
    "DTLZ1": _entry(7, 3, _box(7, 0.0, 1.0), dtlz1, _ps_dtlz_sphere, oversample=2),
    "DTLZ2": _entry(12, 3, _box(12, 0.0, 1.0), dtlz2, _ps_dtlz_sphere, oversample=2),
    "DTLZ3": _entry(12, 3, _box(12, 0.0, 1.0), dtlz3, _ps_dtlz_sphere, oversample=2),
    "DTLZ4": _entry(12, 3, _box(12, 0.0, 1.0), dtlz4, _ps_dtlz4, oversample=2),
    "DTLZ5": _entry(12, 3, _box(12, 0.0, 1.0), dtlz5, _ps_dtlz5),
    "DTLZ6": _entry(12, 3, _box(12, 0.0, 1.0), dtlz6, _ps_dtlz6),
    "DTLZ7": _entry(22, 3, _box(22, 0.0, 1.0), dtlz7, _ps_dtlz7, oversample=5),
    "UF1": _entry(30, 2, _box(30, -1.0, 1.0, head=[_UNIT]), uf1, _ps_uf_sine),
    "UF2": _entry(30, 2, _box(30, -1.0, 1.0, head=[_UNIT]), uf2, _ps_uf2),
    "UF3": _entry(30, 2, _box(30, 0.0, 1.0), uf3, _ps_uf3),
    "UF4": _entry(30, 2, _box(30, -2.0, 2.0, head=[_UNIT]), uf4, _ps_uf_sine),
    "UF5": _entry(30, 2, _box(30, -1.0, 1.0, head=[_UNIT]), uf5, _ps_uf5),
    "UF6": _entry(30, 2, _box(30, -1.0, 1.0, head=[_UNIT]), uf6, _ps_uf6, oversample=4),
    "UF7": _entry(30, 2, _box(30, -1.0, 1.0, head=[_UNIT]), uf7, _ps_uf7),
    "UF8": _entry(30, 3, _box(30, -2.0, 2.0, head=[_UNIT, _UNIT]), uf8, _ps_uf3obj, oversample=2),
    "UF9": _entry(30, 3, _box(30, -2.0, 2.0, head=[_UNIT, _UNIT]), uf9, _ps_uf9, oversample=2),
    "UF10": _entry(30, 3, _box(30, -2.0, 2.0, head=[_UNIT, _UNIT]), uf10, _ps_uf3obj, oversample=2),
}

PROBLEM_NAMES: tuple[str, ...] = tuple(_REGISTRY)


def _lookup(name: str) -> tuple[str, _Entry]:
    key = str(name).upper()
    if key not in _REGISTRY:
        raise ValueError(f"unknown problem {name!r}; supported: {', '.join(PROBLEM_NAMES)}")
    return key, _REGISTRY[key]


def make_problem(name: str) -> ProblemSpec:
    key, e = _lookup(name)
    return ProblemSpec(
        name=key,
        n_vars=e.n_vars,
        n_objectives=e.n_objectives,
        bounds=Bounds(e.lower, e.upper),
        objective=e.objective,
        has_analytic_front=e.pareto_set is not None,
    )


# --- fronts ------------------------------------------------------------------

@dataclass(frozen=True)
class FrontSample:
    points: np.ndarray
    source: str  # "analytic" or "file"
    preimages: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.points)


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Rows of F not dominated by any other row; exact duplicates keep their first copy."""
    F = np.asarray(F, dtype=float)
    n = len(F)
    if F.shape[1] == 2:
        order = np.lexsort((F[:, 1], F[:, 0]))
        f2 = F[order, 1]
        best_before = np.minimum.accumulate(np.concatenate([[np.inf], f2[:-1]]))
        keep = np.zeros(n, dtype=bool)
        keep[order] = f2 < best_before
        return keep
    keep = np.ones(n, dtype=bool)
    for start in range(0, n, 512):
        blk = F[start:start + 512]
        le = np.all(F[None, :, :] <= blk[:, None, :], axis=2)
        lt = np.any(F[None, :, :] < blk[:, None, :], axis=2)
        keep[start:start + 512] = ~np.any(le & lt, axis=1)
    # drop later exact duplicates
    _, first = np.unique(F, axis=0, return_index=True)
    dup = np.ones(n, dtype=bool)
    dup[first] = False
    return keep & ~dup


def _even_subset(n_avail: int, count: int) -> np.ndarray:
    if count >= n_avail:
        return np.arange(n_avail)
    return np.unique(np.round(np.linspace(0, n_avail - 1, count)).astype(int))


def farthest_point_subset(P: np.ndarray, count: int) -> np.ndarray:
    """Greedy max-min subset in range-normalized space, seeded at the lowest first objective."""
    P = np.asarray(P, dtype=float)
    if count >= len(P):
        return np.arange(len(P))
    span = np.ptp(P, axis=0)
    Z = (P - P.min(axis=0)) / np.where(span > 0, span, 1.0)
    chosen = [int(np.argmin(P[:, 0]))]
    dist = np.linalg.norm(Z - Z[chosen[0]], axis=1)
    for _ in range(count - 1):
        nxt = int(np.argmax(dist))
        chosen.append(nxt)
        dist = np.minimum(dist, np.linalg.norm(Z - Z[nxt], axis=1))
    return np.sort(np.array(chosen))


def read_front_file(path) -> np.ndarray:
    """Read a reference front: one objective vector per line, '#' starts a comment."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([float(v) for v in line.split()])
    if not rows:
        raise ValueError(f"reference front {path} is empty")
    return np.array(rows, dtype=float)


def write_front_file(path, points: np.ndarray, comment: str = "") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in comment.splitlines():
            fh.write(f"# {line}\n")
        for row in np.asarray(points, dtype=float):
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def reference_front_path(name: str) -> Path:
    key, _ = _lookup(name)
    return Path(str(resources.files("otnsga") / "data" / f"{key.lower()}.front"))


def sample_true_front(name: str, count: int = 1000) -> FrontSample:
    """Sample ``count`` mutually non-dominated points of a problem's Pareto front.

    UF5's front is 21 isolated points, so it never returns more than that.
    """
    if count < 2:
        raise ValueError("count must be at least 2")
    key, _ = _lookup(name)
    return _cached_front(key, int(count))


@functools.lru_cache(maxsize=64)
def _cached_front(key: str, count: int) -> FrontSample:
    e = _REGISTRY[key]
    if e.pareto_set is None:
        path = reference_front_path(key)
        if not path.exists():
            raise FileNotFoundError(
                f"reference front for {key} not found at {path}; "
                "regenerate it with scripts/make_reference_fronts.py"
            )
        P = read_front_file(path)
        P = P[nondominated_mask(P)]
        return _frozen(FrontSample(points=P[farthest_point_subset(P, count)], source="file"))

    X = e.pareto_set(count * e.oversample, e.n_vars)
    X = np.clip(X, e.lower, e.upper)
    F = evaluate(make_problem(key), X)
    keep = nondominated_mask(F)
    X, F = X[keep], F[keep]
    order = np.lexsort(F.T[::-1])
    X, F = X[order], F[order]
    if e.oversample > 1 and len(F) > count:
        idx = farthest_point_subset(F, count) if e.n_objectives > 2 else _even_subset(len(F), count)
    else:
        idx = _even_subset(len(F), count)
    return _frozen(FrontSample(points=F[idx], source="analytic", preimages=X[idx]))


def _frozen(sample: FrontSample) -> FrontSample:
    for arr in (sample.points, sample.preimages):
        if arr is not None:
            arr.flags.writeable = False
    return sample


def build_reference_front(
    name: str, per_axis: int, count: int = 1000, refine_rounds: int = 0, refine_per_axis: int = 11,
    chunk: int = 1 << 20,
) -> np.ndarray:
    """Brute-force front: evaluate a uniform grid, keep the non-dominated set, thin to ``count``.

    ``refine_rounds`` adds local uniform grids (``refine_per_axis`` points per
    axis, half-width one parent step) around every non-dominated grid point,
    shrinking the step each round. Needed when the Pareto set is
    lower-dimensional and a global grid only grazes it.
    """
    problem = make_problem(name)
    lo, hi = problem.bounds.lower, problem.bounds.upper
    n = problem.n_vars
    axes = [np.linspace(a, b, per_axis) for a, b in zip(lo, hi)]
    total = per_axis**n
    best_X = np.empty((0, n))
    best_F = np.empty((0, problem.n_objectives))

    def absorb(X):
        nonlocal best_X, best_F
        X = np.vstack([best_X, X])
        F = np.vstack([best_F, evaluate(problem, X[len(best_X):])])
        keep = nondominated_mask(F)
        best_X, best_F = X[keep], F[keep]

    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        idx = np.unravel_index(flat, (per_axis,) * n)
        absorb(np.column_stack([axes[d][idx[d]] for d in range(n)]))

    step = (hi - lo) / (per_axis - 1)
    offsets = np.stack(np.meshgrid(*[np.linspace(-1, 1, refine_per_axis)] * n, indexing="ij"), -1).reshape(-1, n)
    for _ in range(refine_rounds):
        centers = best_X.copy()
        for c0 in range(0, len(centers), max(1, chunk // len(offsets))):
            c = centers[c0:c0 + max(1, chunk // len(offsets))]
            local = (c[:, None, :] + offsets[None, :, :] * step).reshape(-1, n)
            absorb(np.clip(local, lo, hi))
        step = step * 2 / (refine_per_axis - 1)

    order = np.lexsort(best_F.T[::-1])
    best_F = best_F[order]
    return best_F[farthest_point_subset(best_F, count)]
