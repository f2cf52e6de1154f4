"""Clustering-based pruning on a small hand-made population.

Class one holds four almost identical individuals and one spread-out
individual; class two holds the two extremes of the front.
"""

import numpy as np

from otnsga import Population, PruneParams, prune_population, retention_count
from otnsga.pruning import build_features, similarity_matrix

X = np.array([[0.50, 0.50], [0.501, 0.50], [0.50, 0.501], [0.501, 0.501], [0.55, 0.55],
              [0.0, 1.0], [1.0, 0.0]])
F = X.copy()
pop = Population(X, F, rank=np.array([1, 1, 1, 1, 1, 0, 0]),
                 crowding=np.array([0.01, 0.02, 0.015, 0.012, 0.8, np.inf, np.inf]))

print(np.round(build_features(pop).rows, 3))
print(np.round(similarity_matrix(pop), 3))

# How many survive in a class of 5 at similarity 0.9 for a few pruning strengths
for delta in (0.12, 0.135, 0.15, 0.45):
    print(delta, retention_count(0.9, delta, 5))

# In the recommended band nobody leaves a class of five; a stronger delta removes two.
out = prune_population(pop, PruneParams(k_clusters=2, delta=0.45), np.random.default_rng(0))
for c in out.meta["clusters"]:
    print("class", c.member_indices, "P_k", round(c.avg_similarity, 3))
print("kept:", out.X.tolist())
