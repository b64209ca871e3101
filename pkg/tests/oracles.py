"""Brute-force reference computations, deliberately naive.

Nothing here imports the search machinery under test; these work from the
raw tables with plain Python sets and exhaustive enumeration.
"""

import itertools


def closure(add, act, seed, zero):
    """Smallest subset containing ``seed`` closed under + and the action."""
    s = set(seed) | {zero}
    while True:
        new = {add[a][b] for a in s for b in s} | {act[r][a] for r in range(len(act)) for a in s}
        if new <= s:
            return frozenset(s)
        s |= new


def all_closed_subsets(add, act, zero, max_gens):
    """Closures of all subsets with at most ``max_gens`` elements."""
    m = len(add)
    found = set()
    for k in range(max_gens + 1):
        for seed in itertools.combinations(range(m), k):
            found.add(closure(add, act, seed, zero))
    return found


def additive_rank_bound(m):
    # a group of order m is generated by at most log2(m) elements
    return max(1, (m - 1).bit_length())


def automorphisms_by_permutation(add, act, zero):
    """All bijections fixing zero that are additive and equivariant."""
    m = len(add)
    others = [a for a in range(m) if a != zero]
    out = []
    for perm in itertools.permutations(others):
        f = {zero: zero}
        f.update(zip(others, perm))
        if all(f[add[a][b]] == add[f[a]][f[b]] for a in range(m) for b in range(m)) and \
                all(f[act[r][a]] == act[r][f[a]] for r in range(len(act)) for a in range(m)):
            out.append(tuple(f[a] for a in range(m)))
    return sorted(out)


def characters_by_brute_force(add, exponent):
    """Every map R -> Z/e that is additive, as value tuples."""
    n = len(add)
    out = []
    for values in itertools.product(range(exponent), repeat=n):
        if all((values[a] + values[b]) % exponent == values[add[a][b]]
               for a in range(n) for b in range(n)):
            out.append(values)
    return out


def z2_times_z8_tables():
    """Z/2 x Z/8 as a Z/8-module, elements (a, b) indexed a*8 + b."""
    el = [(a, b) for a in range(2) for b in range(8)]
    idx = {e: i for i, e in enumerate(el)}
    add = [[idx[((a + c) % 2, (b + d) % 8)] for (c, d) in el] for (a, b) in el]
    act = [[idx[((r * a) % 2, (r * b) % 8)] for (a, b) in el] for r in range(8)]
    return add, act


def tuple_add(add, x, y):
    return tuple(add[a][b] for a, b in zip(x, y))


def tuple_act(act, r, x):
    return tuple(act[r][a] for a in x)


def span_naive(add, act, zero, n, gens):
    z = (zero,) * n
    s = {z} | set(gens)
    while True:
        new = {tuple_add(add, x, y) for x in s for y in s}
        new |= {tuple_act(act, r, x) for r in range(len(act)) for x in s}
        if new <= s:
            return frozenset(s)
        s |= new


def codes_naive(add, act, zero, n, gen_max):
    m = len(add)
    words = list(itertools.product(range(m), repeat=n))
    found = set()
    for k in range(gen_max + 1):
        for gens in itertools.combinations(words, k):
            found.add(span_naive(add, act, zero, n, gens))
    return found


def linear_bijections_naive(add, act, c1, c2):
    """All additive, equivariant bijections between two codes (as dicts)."""
    c1, c2 = sorted(c1), sorted(c2)
    if len(c1) != len(c2):
        return []
    out = []
    for perm in itertools.permutations(c2):
        f = dict(zip(c1, perm))
        if all(f[tuple_add(add, x, y)] == tuple_add(add, f[x], f[y]) for x in c1 for y in c1) \
                and all(f[tuple_act(act, r, x)] == tuple_act(act, r, f[x])
                        for r in range(len(act)) for x in c1):
            out.append(f)
    return out


def extends_naive(f, group_images, n):
    for sigma in itertools.permutations(range(n)):
        for taus in itertools.product(group_images, repeat=n):
            if all(tuple(taus[i][x[sigma[i]]] for i in range(n)) == y for x, y in f.items()):
                return True
    return False
