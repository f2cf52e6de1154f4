"""Decision/objective space types and the Pareto dominance relation.

Every problem in this package is minimized. Populations are stored as
row-major arrays (one row per individual) so that sorting, crowding and
clustering can work on whole generations at once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

#: Crowding value of boundary individuals. Compares above every finite value.
INF_CROWDING = np.inf


class Dominance(enum.Enum):
    FIRST_DOMINATES = "first"
    SECOND_DOMINATES = "second"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


def dominates(a, b) -> Dominance:
    """Classify the Pareto relation between two objective vectors (minimization)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"objective vectors must have equal length, got {a.shape} and {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("objective vectors must be finite")
    le = np.all(a <= b)
    ge = np.all(a >= b)
    if le and ge:
        return Dominance.EQUAL
    if le:
        return Dominance.FIRST_DOMINATES
    if ge:
        return Dominance.SECOND_DOMINATES
    return Dominance.INCOMPARABLE


def dominance_matrix(F: np.ndarray) -> np.ndarray:
    """Boolean matrix ``D`` with ``D[i, j]`` true when row i dominates row j."""
    F = np.asarray(F, dtype=float)
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


@dataclass(frozen=True)
class Bounds:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).reshape(-1)
        upper = np.array(self.upper, dtype=float).reshape(-1)
        if lower.shape != upper.shape:
            raise ValueError("lower and upper bounds must have the same length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def __len__(self) -> int:
        return len(self.lower)

    def contains(self, X) -> bool:
        X = np.asarray(X, dtype=float)
        return bool(np.all(X >= self.lower) and np.all(X <= self.upper))

    def __eq__(self, other):
        if not isinstance(other, Bounds):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)

    def __hash__(self):
        return hash((self.lower.tobytes(), self.upper.tobytes()))


def clamp(x, bounds: Bounds) -> np.ndarray:
    """Project each component of ``x`` (or each row of a matrix) into the box."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != len(bounds):
        raise ValueError(f"expected {len(bounds)} components, got {x.shape[-1]}")
    return np.clip(x, bounds.lower, bounds.upper)


@dataclass(frozen=True)
class ProblemSpec:
    """A box-constrained benchmark problem.

    ``objective`` maps a ``(n_points, n_vars)`` array to a
    ``(n_points, n_objectives)`` array.
    """

    name: str
    n_vars: int
    n_objectives: int
    bounds: Bounds
    objective: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    has_analytic_front: bool = True

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("a problem needs at least one decision variable")
        if self.n_objectives < 2:
            raise ValueError("a multi-objective problem needs at least two objectives")
        if len(self.bounds) != self.n_vars:
            raise ValueError("bounds length does not match n_vars")

    def evaluate(self, X) -> np.ndarray:
        return evaluate(self, X)


def evaluate(problem: ProblemSpec, X) -> np.ndarray:
    """Objective values of one decision vector (1-D) or a batch (2-D, one per row)."""
    X = np.asarray(X, dtype=float)
    single = X.ndim == 1
    X2 = np.atleast_2d(X)
    if X2.shape[1] != problem.n_vars:
        raise ValueError(f"{problem.name} expects {problem.n_vars} variables, got {X2.shape[1]}")
    if not problem.bounds.contains(X2):
        raise ValueError(f"decision vector outside the bounds of {problem.name}; clamp it first")
    F = np.asarray(problem.objective(X2), dtype=float).reshape(X2.shape[0], problem.n_objectives)
    return F[0] if single else F


@dataclass(frozen=True)
class Individual:
    decision: np.ndarray
    objectives: np.ndarray
    rank: int | None = None
    crowding: float | None = None

    @property
    def is_sorted(self) -> bool:
        return self.rank is not None and self.crowding is not None


@dataclass
class Population:
    """A generation stored column-wise.

    ``rank`` and ``crowding`` are ``None`` until a sort has been run on this
    exact set of rows.
    """

    X: np.ndarray
    F: np.ndarray
    rank: np.ndarray | None = None
    crowding: np.ndarray | None = None
    generation: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=float))
        self.F = np.atleast_2d(np.asarray(self.F, dtype=float))
        if len(self.X) != len(self.F):
            raise ValueError("decision and objective arrays must have the same number of rows")
        if (self.rank is None) != (self.crowding is None):
            raise ValueError("rank and crowding must be set together")

    def __len__(self) -> int:
        return len(self.X)

    def __getitem__(self, i: int) -> Individual:
        return Individual(
            decision=self.X[i],
            objectives=self.F[i],
            rank=None if self.rank is None else int(self.rank[i]),
            crowding=None if self.crowding is None else float(self.crowding[i]),
        )

    @property
    def is_sorted(self) -> bool:
        return self.rank is not None

    def take(self, idx) -> "Population":
        idx = np.asarray(idx, dtype=int)
        return Population(
            X=self.X[idx],
            F=self.F[idx],
            rank=None if self.rank is None else self.rank[idx],
            crowding=None if self.crowding is None else self.crowding[idx],
            generation=self.generation,
        )

    @classmethod
    def concat(cls, a: "Population", b: "Population") -> "Population":
        return cls(X=np.vstack([a.X, b.X]), F=np.vstack([a.F, b.F]), generation=a.generation)
