"""Brute-force reference computations.

Deliberately naive and independent of the library's algorithms: subgroups
by scanning subsets, Möbius values by counting chains (Hall's formula),
closures by fixpoint iteration on raw permutation tuples.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations


def perm_closure(gens):
    """All products of the given permutation tuples."""
    if not gens:
        return {()}
    n = len(gens[0])
    elems = {tuple(range(n))}
    while True:
        new = {tuple(g[i] for i in x) for x in elems for g in gens} | elems
        if new == elems:
            return elems
        elems = new


def all_subgroups(mul):
    """Every subset closed under the table's product, by Lagrange-filtered scan."""
    n = len(mul)
    others = range(1, n)
    out = []
    for size in range(1, n + 1):
        if n % size:
            continue
        for rest in combinations(others, size - 1):
            s = frozenset((0,) + rest)
            if all(mul[a][b] in s for a in s for b in s):
                out.append(s)
    return out


def mobius_by_chains(subgroups):
    """μ(X,Y) = Σ_k (-1)^k · #(chains X = Z0 < Z1 < ... < Zk = Y)."""
    subs = list(subgroups)

    @lru_cache(maxsize=None)
    def chains(x, y):
        # signed chain count from x to y
        if x == y:
            return 1
        total = 0
        for z in subs:
            if x < z <= y:
                total -= chains(z, y)
        return total

    return chains


def conjugate(mul, inv, g, s):
    return frozenset(mul[mul[g][x]][inv[g]] for x in s)


def is_normal(mul, inv, s):
    return all(conjugate(mul, inv, g, s) == s for g in range(len(mul)))


def normalizer(mul, inv, s):
    return frozenset(g for g in range(len(mul)) if conjugate(mul, inv, g, s) == s)


def product_set(mul, a, b):
    return frozenset(mul[x][y] for x in a for y in b)


def subgroup_classes(mul, inv, subs):
    seen, out = set(), []
    for s in subs:
        if s in seen:
            continue
        orbit = {conjugate(mul, inv, g, s) for g in range(len(mul))}
        seen |= orbit
        out.append(orbit)
    return out


def slice_class_count(mul, inv, subs):
    pairs = {(t, s) for t in subs for s in subs if s <= t}
    seen, count = set(), 0
    for p in sorted(pairs, key=lambda p: (sorted(p[0]), sorted(p[1]))):
        if p in seen:
            continue
        count += 1
        seen |= {(conjugate(mul, inv, g, p[0]), conjugate(mul, inv, g, p[1])) for g in range(len(mul))}
    return count


def m_constant(mul, subs, mu, N):
    G = frozenset(range(len(mul)))
    total = sum(len(X) * mu(X, G) for X in subs if product_set(mul, X, N) == G)
    return Fraction(total, len(mul))


def m_circ(mul, subs, mu, S, N):
    G = frozenset(range(len(mul)))
    return sum(mu(X, G) for X in subs if S <= X and product_set(mul, X, N) == G)
