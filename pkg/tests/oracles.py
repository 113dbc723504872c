"""Slow, obviously-correct reference implementations used by the tests."""

import itertools
import math


def tied_ranks_bruteforce(x):
    """Average of the 1-based rank vectors over every way of breaking ties."""
    n = len(x)
    orders = [p for p in itertools.permutations(range(n)) if all(x[p[i]] <= x[p[i + 1]] for i in range(n - 1))]
    ranks = [0.0] * n
    for p in orders:
        for r, i in enumerate(p, 1):
            ranks[i] += r
    return [r / len(orders) for r in ranks]


def pearson(a, b):
    ma, mb = sum(a) / len(a), sum(b) / len(b)
    num = sum((u - ma) * (v - mb) for u, v in zip(a, b))
    den = math.sqrt(sum((u - ma) ** 2 for u in a) * sum((v - mb) ** 2 for v in b))
    return num / den


def spearman_bruteforce(x, y):
    return pearson(tied_ranks_bruteforce(x), tied_ranks_bruteforce(y))


def pair_counts(p, t):
    """(same in both, same in p, same in t, total) over unordered item pairs."""
    items = sorted(p)
    both = in_p = in_t = total = 0
    for a, b in itertools.combinations(items, 2):
        sp, st = p[a] == p[b], t[a] == t[b]
        both += sp and st
        in_p += sp
        in_t += st
        total += 1
    return both, in_p, in_t, total
