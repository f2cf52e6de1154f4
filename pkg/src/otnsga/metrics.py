"""Quality indicators for an approximation set ``A`` against a reference front ``P``.

All three follow the textbook forms used by the benchmark tables:

* GD  = sqrt(sum_i d_i^2) / |A|, d_i the Euclidean distance from a_i to P
* SP  = sqrt(sum_i (mean(d) - d_i)^2 / (|A| - 1)), d_i the L1 distance from a_i
  to its nearest other member of A
* IGD = mean over p in P of the range-normalized distance to the nearest a,
  ranges taken over P

Final reductions use ``math.fsum`` so results do not depend on row order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_CHUNK = 256


def _as_set(A, name: str) -> np.ndarray:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.size == 0 or len(A) == 0:
        raise ValueError(f"{name} must be nonempty")
    return A


def _points(P) -> np.ndarray:
    return getattr(P, "points", P)


def _min_distances(A: np.ndarray, B: np.ndarray, scale: np.ndarray | None = None) -> np.ndarray:
    """For each row of A, the Euclidean distance to the nearest row of B."""
    out = np.empty(len(A))
    for start in range(0, len(A), _CHUNK):
        diff = A[start:start + _CHUNK, None, :] - B[None, :, :]
        if scale is not None:
            diff = diff * scale
        out[start:start + _CHUNK] = np.sqrt(np.min(np.sum(diff * diff, axis=2), axis=1))
    return out


def gd(A, P) -> float:
    A = _as_set(A, "A")
    P = _as_set(_points(P), "P")
    d = _min_distances(A, P)
    return math.sqrt(math.fsum(d * d)) / len(A)


def nearest_neighbour_l1(A) -> np.ndarray:
    A = _as_set(A, "A")
    d = np.empty(len(A))
    for start in range(0, len(A), _CHUNK):
        blk = np.sum(np.abs(A[start:start + _CHUNK, None, :] - A[None, :, :]), axis=2)
        rows = np.arange(len(blk))
        blk[rows, rows + start] = np.inf
        d[start:start + _CHUNK] = blk.min(axis=1)
    return d


def sp(A) -> float:
    A = _as_set(A, "A")
    if len(A) < 2:
        raise ValueError("spacing needs at least two points")
    d = nearest_neighbour_l1(A)
    mean = math.fsum(d) / len(d)
    return math.sqrt(math.fsum((mean - d) ** 2) / (len(d) - 1))


def igd(A, P) -> float:
    A = _as_set(A, "A")
    P = _as_set(_points(P), "P")
    span = P.max(axis=0) - P.min(axis=0)
    # a degenerate reference range contributes nothing for that objective
    scale = np.divide(1.0, span, out=np.zeros_like(span), where=span > 0)
    dist = _min_distances(P, A, scale)
    return math.fsum(dist) / len(P)


@dataclass(frozen=True)
class IndicatorReport:
    gd: float
    sp: float
    igd: float
    n_points: int
    reference_id: str

    def as_tuple(self) -> tuple[float, float, float]:
        return self.gd, self.sp, self.igd


def indicator_report(A, P, reference_id: str = "") -> IndicatorReport:
    """GD, SP and IGD together. SP of a single point is reported as 0."""
    A = _as_set(A, "A")
    return IndicatorReport(
        gd=gd(A, P),
        sp=sp(A) if len(A) >= 2 else 0.0,
        igd=igd(A, P),
        n_points=len(A),
        reference_id=reference_id,
    )
