"""Slow, obviously-correct reference computations.

Nothing here imports the package's algorithms; only plain multiplication
tables (lists of lists) go in, Python sets come out.
"""

from __future__ import annotations

import math
from itertools import combinations


def table(G):
    return G.mul.tolist()


def compose(x, y):
    """Right-to-left composition of 0-based image tuples: (x*y)(i) = x(y(i))."""
    return tuple(x[i] for i in y)


def perm_closure(degree, gens):
    identity = tuple(range(degree))
    seen = {identity}
    todo = [identity]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def closure(mul, seed):
    """Subgroup generated by ``seed``: keep multiplying until nothing new appears."""
    elems = {0} | set(seed)
    while True:
        new = {mul[a][b] for a in elems for b in elems} - elems
        if not new:
            return frozenset(elems)
        elems |= new


def all_subgroups(mul):
    """Every subgroup, as the closure of some subset of at most log2(n) elements.

    A group of order m has a generating set of at most log2(m) elements
    (each new generator at least doubles the subgroup), so this is complete.
    """
    n = len(mul)
    r = max(1, int(math.log2(n))) if n > 1 else 0
    found = {frozenset({0})}
    for k in range(1, r + 1):
        for subset in combinations(range(1, n), k):
            found.add(closure(mul, subset))
    return found


def centralizer(mul, S):
    n = len(mul)
    return frozenset(g for g in range(n) if all(mul[g][s] == mul[s][g] for s in S))


def center(mul):
    return centralizer(mul, range(len(mul)))


def measure(mul, H):
    return len(H) * len(centralizer(mul, H))


def cd_members(mul, subgroups):
    m = {H: measure(mul, H) for H in subgroups}
    top = max(m.values())
    return top, {H for H, v in m.items() if v == top}


def is_dense(mul, subgroups=None):
    """Direct reading of the definition: every non-maximal pair H < K has a
    CD member strictly between."""
    subgroups = subgroups or all_subgroups(mul)
    _, cd = cd_members(mul, subgroups)
    failures = []
    for H in subgroups:
        for K in subgroups:
            if H < K:
                between = [X for X in subgroups if H < X < K]
                if between and not any(X in cd for X in between):
                    failures.append((H, K))
    return not failures, failures


def is_normal(mul, H):
    n = len(mul)
    inv = [next(y for y in range(n) if mul[x][y] == 0) for x in range(n)]
    return all(mul[mul[g][h]][inv[g]] in H for g in range(n) for h in H)


def associativity_failures(mul):
    n = len(mul)
    return [(a, b, c) for a in range(n) for b in range(n) for c in range(n)
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]]


def element_order(mul, x):
    k, y = 1, x
    while y != 0:
        y = mul[y][x]
        k += 1
    return k
