"""Evaluate the 3-space circle-cover closed forms for K_n and K_{p,q} with
exact fractions and write the golden table consumed by the acceptance tests.

    python3 tools/golden_bounds.py > crates/core/tests/fixtures/sigma13_golden.json

The upper bound for K_n, (n^2 + 5n + 6) / 6, is rounded down: cover numbers
are integers, so the floor is still an upper bound.
"""
import json
import math
from fractions import Fraction

KN = [1, 4, 7, 10, 13]
KPQ = [(1, 1), (2, 2), (3, 5), (4, 7), (6, 9)]


def kn(n):
    return math.floor(Fraction(n * n, 8)), math.floor(Fraction(n * n + 5 * n + 6, 6))


def kpq(p, q):
    return math.ceil(Fraction(p * q, 4)), math.ceil(Fraction(p, 2)) * math.ceil(Fraction(q, 2))


rows = [{"family": "complete", "n": n, "lower": kn(n)[0], "upper": kn(n)[1]} for n in KN]
rows += [
    {"family": "bipartite", "p": p, "q": q, "lower": kpq(p, q)[0], "upper": kpq(p, q)[1]}
    for p, q in KPQ
]
print(json.dumps(rows, indent=2))
