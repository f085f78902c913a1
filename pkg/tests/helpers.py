"""Seeded generators of random tuples with small integer entries."""
from __future__ import annotations

import random
from fractions import Fraction

from conjstab.linalg import Matrix
from conjstab.onepar import GL, GROUP_KIND, LIE_KIND, SL, GroupPoint

ENTRIES = range(-2, 3)


def _raw(rng: random.Random, n: int, pattern) -> list[list[int]]:
    return [[rng.choice(ENTRIES) if pattern(i, j) else 0 for j in range(n)] for i in range(n)]


def _pattern(rng: random.Random, n: int):
    """Full, upper triangular, or block upper triangular support."""
    kind = rng.choice(["full", "full", "upper", "block"])
    if kind == "full":
        return lambda i, j: True
    if kind == "upper":
        return lambda i, j: i <= j
    cut = rng.randrange(1, n) if n > 1 else 1
    return lambda i, j: not (i >= cut and j < cut)


def random_matrix(rng, n, group, kind, pattern=None):
    pattern = pattern or (lambda i, j: True)
    while True:
        rows = _raw(rng, n, pattern)
        if kind == LIE_KIND:
            return Matrix(rows)
        m = Matrix(rows)
        d = m.det()
        if not d:
            continue
        if group == SL and d != 1:
            rows = [[Fraction(a) / d if i == 0 else a for a in r] for i, r in enumerate(rows)]
            m = Matrix(rows)
        return m


def random_point(rng: random.Random, n=None, N=None, group=None, kind=None) -> GroupPoint:
    n = n or rng.choice([2, 3])
    N = N or rng.choice([1, 2, 3])
    group = group or rng.choice([GL, SL])
    kind = kind or rng.choice([GROUP_KIND, LIE_KIND])
    pattern = _pattern(rng, n)
    return GroupPoint(group, kind, tuple(random_matrix(rng, n, group, kind, pattern) for _ in range(N)))


def random_invertible(rng: random.Random, n: int, lo=-2, hi=2) -> Matrix:
    while True:
        m = Matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if m.det():
            return m


def random_nilpotent(rng: random.Random, n: int) -> Matrix:
    strict = Matrix([[rng.choice(ENTRIES) if i < j else 0 for j in range(n)] for i in range(n)])
    g = random_invertible(rng, n, -1, 1)
    return g @ strict @ g.inverse()
