"""Orthogonal arrays and the orthogonal initial population.

Run with ``python3 demos/orthogonal_design.py``.
"""

import numpy as np

from otnsga import construct_orthogonal_array, make_problem, orthogonal_initialize, sample_true_front
from otnsga.metrics import gd
from otnsga.nsga2 import random_population, solution_set
from otnsga.orthogonal import SocParams, segment_space, soc_crossover

# Four factors at three levels: 9 rows instead of the 81 of a full factorial.
oa = construct_orthogonal_array(3, 4)
print(oa.cells)
print("balanced:", oa.is_balanced())

# Any two columns together show each of the 9 level pairs exactly once.
pairs = set(zip(oa.cells[:, 0], oa.cells[:, 3]))
print("pairs in columns 1 and 4:", len(pairs))

# Orthogonal crossover between two parents samples their bounding box on a 3-level grid.
kids = soc_crossover([0.0, 0.0, 1.0], [2.0, 4.0, 1.0], SocParams(q_levels=3, theta0=1e-6))
print(kids)  # the third coordinate agrees, so it stays at the midpoint

# The search box is cut into slabs along its widest side before crossover.
problem = make_problem("ZDT1")
parts = segment_space(problem.bounds, 4)
print("split dimension:", parts.split_dim, "first slab upper bound:", parts.subspaces[0].upper[0])

# Compare generation-0 quality with uniform random sampling.
front = sample_true_front("ZDT1")
pop = orthogonal_initialize(problem, 100)
print("pool size", pop.meta["pool_size"], "subspaces", pop.meta["subspaces_used"])
ours = gd(solution_set(pop), front)
rand = [gd(solution_set(random_population(problem, 100, np.random.default_rng(s))), front) for s in range(10)]
print(f"GD orthogonal {ours:.2e}  random median {np.median(rand):.2e}")
