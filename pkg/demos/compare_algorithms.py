"""NSGA-II against OTNSGA-II on ZDT1 over a few seeds.

A shortened version of the full protocol (100 generations instead of 250)
so it finishes in well under a minute.
"""

import numpy as np

from otnsga import RunConfig, run_nsga2, run_otnsga2

gens = 100
rows = []
for seed in range(3):
    cfg = RunConfig("ZDT1", pop_size=100, generations=gens, seed=seed)
    a = run_nsga2("ZDT1", cfg)
    b = run_otnsga2("ZDT1", cfg)
    rows.append((a.final.gd, b.final.gd, a.final.igd, b.final.igd))
    print(f"seed {seed}: GD {a.final.gd:.2e} vs {b.final.gd:.2e}   IGD {a.final.igd:.3f} vs {b.final.igd:.3f}")

rows = np.array(rows)
print("median GD ratio nsga2/otnsga2:", np.median(rows[:, 0]) / np.median(rows[:, 1]))

# Per-generation traces start at generation 0, the initial population.
trace = run_otnsga2("ZDT1", RunConfig("ZDT1", generations=gens, seed=0)).trace
for g in (0, 10, 50, gens):
    print(f"gen {g:3d}  gd={trace[g, 0]:.2e}  sp={trace[g, 1]:.2e}  igd={trace[g, 2]:.3f}")

# The pruned population can be smaller than pop_size between generations.
rep = run_otnsga2("ZDT1", RunConfig("ZDT1", generations=20, seed=0))
print("final population size:", len(rep.final_X), "pruned in total:", rep.resolved["pruned_total"])
