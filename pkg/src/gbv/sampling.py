"""Seeded random elements for property checks.

Coefficients are uniform in {-3..3}; every odd monomial is kept with
probability 1/2 and, when kept, gets a sparse polynomial (at most three
terms, even degree at most ``degree``).  Callers pass an explicit
``random.Random`` so that results depend only on the seed.
"""

from __future__ import annotations

import random
from itertools import combinations

from .dervec import GradedVectorField
from .supernum import SuperFunction

__all__ = [
    "rng_for",
    "random_poly_terms",
    "random_superfunction",
    "random_homogeneous",
    "random_even",
    "random_base_function",
    "random_field",
    "random_form",
    "random_base_vector",
]

COEFFS = range(-3, 4)
MAX_TERMS = 3


def rng_for(seed, suite: str) -> random.Random:
    """Independent stream for ``suite`` so that suites never share randomness."""
    return random.Random(f"{seed}:{suite}")


def _exponent(rng, m, degree):
    total = rng.randint(0, degree)
    exps = [0] * m
    for _ in range(total):
        if m:
            exps[rng.randrange(m)] += 1
    return tuple(exps)


def random_poly_terms(rng: random.Random, m: int, degree: int, terms: int = MAX_TERMS) -> dict:
    out: dict = {}
    for _ in range(rng.randint(1, terms)):
        e = _exponent(rng, m, degree)
        out[e] = out.get(e, 0) + rng.choice(COEFFS)
    return out


def random_superfunction(
    rng: random.Random, m: int, n: int, degree: int = 3, parity: int | None = None, odd_degrees=None
) -> SuperFunction:
    """Random element; ``parity`` or ``odd_degrees`` restrict the odd monomials used."""
    acc = {}
    for k in range(n + 1):
        if parity is not None and (k & 1) != parity:
            continue
        if odd_degrees is not None and k not in odd_degrees:
            continue
        for odd in combinations(range(n), k):
            if rng.random() < 0.5:
                for e, c in random_poly_terms(rng, m, degree).items():
                    acc[(odd, e)] = acc.get((odd, e), 0) + c
    return SuperFunction(m, n, acc)


def random_homogeneous(rng: random.Random, m: int, n: int, degree: int = 3) -> tuple[int, SuperFunction]:
    p = rng.randrange(2) if n else 0
    return p, random_superfunction(rng, m, n, degree, parity=p)


def random_even(rng: random.Random, m: int, n: int, degree: int = 3) -> SuperFunction:
    return random_superfunction(rng, m, n, degree, parity=0)


def random_base_function(rng: random.Random, m: int, n: int, degree: int = 3) -> SuperFunction:
    """Random polynomial in the even coordinates only."""
    return SuperFunction(m, n, {((), e): c for e, c in random_poly_terms(rng, m, degree).items()})


def random_field(rng: random.Random, m: int, n: int, degree: int = 2, parity: int | None = None) -> GradedVectorField:
    if parity is None:
        parity = rng.randrange(2)
    even = [random_superfunction(rng, m, n, degree, parity=parity) for _ in range(m)]
    odd = [random_superfunction(rng, m, n, degree, parity=parity ^ 1) for _ in range(n)]
    if m + n == 0:
        return GradedVectorField.zero(0, 0, parity)
    return GradedVectorField(even, odd, parity)


def random_form(rng: random.Random, m: int, k: int, degree: int = 2) -> SuperFunction:
    """Random ``k``-form on R^m (as an element of R^{m|m})."""
    return random_superfunction(rng, m, m, degree, odd_degrees={k})


def random_base_vector(rng: random.Random, m: int, degree: int = 2) -> tuple:
    return tuple(random_base_function(rng, m, m, degree) for _ in range(m))
