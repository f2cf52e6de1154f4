"""Deliberately naive reference implementations used as test oracles."""

import math


def brute_fronts(F):
    """Peel non-dominated layers with plain loops; returns a list of sorted index lists."""
    n = len(F)

    def dom(a, b):
        return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))

    left = set(range(n))
    fronts = []
    while left:
        layer = sorted(i for i in left if not any(dom(F[j], F[i]) for j in left if j != i))
        fronts.append(layer)
        left -= set(layer)
    return fronts


def gd_loop(A, P):
    total = 0.0
    for a in A:
        best = min(sum((x - y) ** 2 for x, y in zip(a, p)) for p in P)
        total += best
    return math.sqrt(total) / len(A)


def sp_loop(A):
    d = []
    for i, a in enumerate(A):
        d.append(min(sum(abs(x - y) for x, y in zip(a, b)) for j, b in enumerate(A) if j != i))
    mean = sum(d) / len(d)
    return math.sqrt(sum((mean - di) ** 2 for di in d) / (len(d) - 1))


def igd_loop(A, P):
    m = len(P[0])
    hi = [max(p[k] for p in P) for k in range(m)]
    lo = [min(p[k] for p in P) for k in range(m)]
    total = 0.0
    for p in P:
        best = math.inf
        for a in A:
            s = 0.0
            for k in range(m):
                if hi[k] > lo[k]:
                    s += ((p[k] - a[k]) / (hi[k] - lo[k])) ** 2
            best = min(best, math.sqrt(s))
        total += best
    return total / len(P)


def similarity_loop(X, F):
    """p_ij from scratch: min-max scale each column, Euclidean distances, 1 - e / e_max."""
    rows = [list(x) + list(f) for x, f in zip(X, F)]
    cols = list(zip(*rows))
    scaled = []
    for r in rows:
        z = []
        for k, v in enumerate(r):
            lo, hi = min(cols[k]), max(cols[k])
            z.append((v - lo) / (hi - lo) if hi > lo else 0.0)
        scaled.append(z)
    n = len(rows)
    E = [[math.dist(scaled[i], scaled[j]) for j in range(n)] for i in range(n)]
    e_max = max(max(r) for r in E)
    if e_max == 0:
        return [[1.0] * n for _ in range(n)]
    return [[1 - E[i][j] / e_max for j in range(n)] for i in range(n)]


def prune_keep_oracle(labels, rank, crowding, S, delta):
    """Indices kept by per-cluster sorting, computed with plain Python."""
    kept = set()
    for c in sorted(set(labels)):
        members = [i for i, lab in enumerate(labels) if lab == c]
        m = len(members)
        if m == 1:
            p_k = 0.0
        else:
            pairs = [S[a][b] for ai, a in enumerate(members) for b in members[ai + 1:]]
            p_k = sum(pairs) / len(pairs)
        n_k = max(1, math.ceil((1 - delta * p_k) * m - 1e-9))
        order = sorted(members, key=lambda i: (rank[i], -crowding[i], i))
        kept.update(order[:n_k])
    return kept


def chain_ranks(F):
    """Rank = length of the longest dominance chain ending at each point (O(n^2) pair checks).

    Lexicographic order puts every dominator before the points it dominates,
    so one pass in that order suffices.
    """
    rows = [tuple(r) for r in F]
    order = sorted(range(len(rows)), key=lambda i: rows[i])
    rank = [0] * len(rows)
    for pos, i in enumerate(order):
        a = rows[i]
        for j in order[:pos]:
            b = rows[j]
            if b != a and all(x <= y for x, y in zip(b, a)):
                rank[i] = max(rank[i], rank[j] + 1)
    return rank
