"""Shared generators for tests."""

import random

from pdloop.algebra import GradedGroup
from pdloop.pdcomplex import PDComplex

PRIMES = (2, 3, 5, 7)


def random_pd(rng: random.Random) -> PDComplex:
    """Random homology obeying rank symmetry i <-> n-i and torsion symmetry i <-> n-1-i."""
    m = rng.randint(2, 5)
    n = rng.randint(2 * m, 3 * m + 2)
    acc: dict[int, list] = {}

    def put(d, rank=0, tors=()):
        r0, t0 = acc.get(d, [0, []])
        acc[d] = [r0 + rank, t0 + list(tors)]

    for i in range(m, n // 2 + 1):
        r = rng.randint(0, 2)
        if r:
            put(i, r)
            if n - i != i:
                put(n - i, r)
    for i in range(m, (n - 1) // 2 + 1):
        j = n - 1 - i
        if j < m or rng.random() < 0.5:
            continue
        s = (rng.choice(PRIMES), rng.randint(1, 2), rng.randint(1, 2))
        put(i, 0, [s])
        if j != i:
            put(j, 0, [s])
    h = GradedGroup.of({d: (r, t) for d, (r, t) in acc.items()})
    return PDComplex("R", n, m, h)


def perturb(M: PDComplex, rng: random.Random) -> tuple[PDComplex, int]:
    """Add one free or torsion summand in a degree whose dual partner differs."""
    n, m = M.dim, M.conn_m
    if rng.random() < 0.5:
        choices = [d for d in range(m, n) if d != n - d]
        d = rng.choice(choices)
        extra = GradedGroup.of({d: (1, [])})
    else:
        choices = [d for d in range(m, n) if d != n - 1 - d]
        d = rng.choice(choices)
        extra = GradedGroup.of({d: (0, [(rng.choice(PRIMES), 1, 1)])})
    return PDComplex(M.name, n, m, M.homology + extra), d
