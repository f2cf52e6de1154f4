"""Regenerate the bundled POL and KUR reference fronts.

Both problems lack a closed-form Pareto front, so the reference is the
non-dominated subset of a dense uniform grid (at least 10^6 points)
plus local grid refinement around the surviving points, thinned to 1000 well-spread points.

    python scripts/make_reference_fronts.py
"""

import time

from otnsga.problems import build_reference_front, reference_front_path, write_front_file

# name -> (points per axis, local refinement rounds)
GRIDS = {"POL": (1001, 1), "KUR": (101, 3)}

if __name__ == "__main__":
    for name, (per_axis, rounds) in GRIDS.items():
        t0 = time.time()
        front = build_reference_front(name, per_axis=per_axis, count=1000, refine_rounds=rounds)
        path = reference_front_path(name)
        write_front_file(
            path,
            front,
            comment=f"{name} reference front\nnon-dominated subset of a {per_axis}-per-axis uniform grid "
            f"with {rounds} local refinement rounds, thinned to {len(front)} points by farthest-point selection",
        )
        print(f"{name}: {len(front)} points -> {path} ({time.time() - t0:.1f}s)")
