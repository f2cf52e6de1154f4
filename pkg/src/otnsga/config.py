"""Run parameters and run results shared by both algorithms and the harness."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .metrics import IndicatorReport

ALGORITHMS = ("nsga2", "otnsga2")


@dataclass(frozen=True)
class VariationParams:
    p_crossover: float = 0.9
    p_mutation: float = 0.1
    eta_c: float = 20.0
    eta_m: float = 20.0

    def __post_init__(self):
        for name in ("p_crossover", "p_mutation"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be a probability, got {v}")
        for name in ("eta_c", "eta_m"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class PruneParams:
    k_clusters: int | None = None  # None: max(2, ceil(n / 20))
    delta: float = 0.135
    kmeans_max_iter: int = 100
    kmeans_tol: float = 1e-9

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.k_clusters is not None and self.k_clusters < 2:
            raise ValueError("k_clusters must be at least 2")
        if self.kmeans_max_iter < 1:
            raise ValueError("kmeans_max_iter must be positive")

    def clusters_for(self, n: int) -> int:
        if self.k_clusters is not None:
            return self.k_clusters
        return max(2, math.ceil(n / 20))


@dataclass(frozen=True)
class InitParams:
    """Orthogonal initialization: subspace count, OA levels, relative similarity threshold."""

    subspaces: int = 4
    q_levels: int = 3
    theta0: float = 1e-4

    def __post_init__(self):
        if self.subspaces < 1:
            raise ValueError("subspaces must be at least 1")
        if self.theta0 <= 0:
            raise ValueError("theta0 must be positive")


@dataclass(frozen=True)
class RunConfig:
    problem: str
    algorithm: str = "otnsga2"
    pop_size: int = 100
    generations: int = 250
    variation: VariationParams = field(default_factory=VariationParams)
    prune: PruneParams = field(default_factory=PruneParams)
    init: InitParams = field(default_factory=InitParams)
    seed: int = 0
    front_points: int = 1000

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {{{', '.join(ALGORITHMS)}}}, got {self.algorithm!r}")
        if self.pop_size < 4 or self.pop_size % 2:
            raise ValueError(f"pop_size must be even and at least 4, got {self.pop_size}")
        if self.generations < 0:
            raise ValueError("generations must be nonnegative")
        if self.front_points < 2:
            raise ValueError("front_points must be at least 2")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class RunReport:
    config: RunConfig
    trace: np.ndarray  # (generations + 1, 3): gd, sp, igd per generation
    final_X: np.ndarray
    final_F: np.ndarray
    final: IndicatorReport
    resolved: dict
    flags: list = field(default_factory=list)
    wall_clock: float = 0.0

    def to_dict(self) -> dict:
        """JSON-ready view. Wall-clock time is left out so the data is reproducible."""
        return {
            "config": self.config.to_dict(),
            "resolved": self.resolved,
            "flags": list(self.flags),
            "final": asdict(self.final),
            "trace": {
                "generation": list(range(len(self.trace))),
                "gd": self.trace[:, 0].tolist(),
                "sp": self.trace[:, 1].tolist(),
                "igd": self.trace[:, 2].tolist(),
            },
            "final_population": {
                "decision": self.final_X.tolist(),
                "objectives": self.final_F.tolist(),
            },
        }
