"""Seeded generators of test forms."""

import random
from fractions import Fraction

from hypersing.linear import det, identity
from hypersing.poly import Form, monomials, permute


def random_form(rng, n, d, coeff=3, density=1.0):
    while True:
        terms = {m: rng.randint(-coeff, coeff) for m in monomials(n, d) if rng.random() < density}
        f = Form(n, d, terms)
        if f:
            return f


def nodal_at_e0(rng, n, d, coeff=3):
    """Random form with the z0^d and z0^(d-1) zi coefficients removed.

    Generically this has an ordinary node at e0 and is smooth elsewhere.
    """
    terms = {m: rng.randint(-coeff, coeff) for m in monomials(n, d) if m[0] < d - 1}
    quad = [m for m in monomials(n, d) if m[0] == d - 2]
    for m in quad:
        if not terms.get(m):
            terms[m] = rng.choice([-2, -1, 1, 2])
    return Form(n, d, terms)


def random_admissible_weight(rng, n, bound=20):
    """Sorted, sum-zero, nonzero integer vector with entries in [-bound, bound]."""
    while True:
        head = [rng.randint(-bound, bound) for _ in range(n)]
        last = -sum(head)
        if -bound <= last <= bound and (any(head) or last):
            return tuple(sorted(head + [last], reverse=True))


def destabilized_form(rng, n, d, coeff=3, density=0.6):
    """Random form whose support lies in {m : <m, r> <= 0} for a random sorted
    weight r, then shuffled by a random coordinate permutation."""
    while True:
        r = random_admissible_weight(rng, n, bound=4)
        allowed = [m for m in monomials(n, d) if sum(a * b for a, b in zip(m, r)) <= 0]
        terms = {m: rng.choice([c for c in range(-coeff, coeff + 1) if c])
                 for m in allowed if rng.random() < density}
        if terms:
            perm = list(range(n + 1))
            rng.shuffle(perm)
            return permute(Form(n, d, terms), perm)


def random_invertible(rng, size, entries=(-2, -1, 0, 1, 2), rational=True):
    while True:
        g = tuple(
            tuple(Fraction(rng.choice(entries), rng.choice([1, 2]) if rational else 1) for _ in range(size))
            for _ in range(size)
        )
        if det(g) != 0:
            return g


def grid_values():
    return [Fraction(x) for x in (0, 1, -1, 2, -2)] + [Fraction(1, 2), Fraction(-1, 2)]


__all__ = ["random_form", "nodal_at_e0", "random_admissible_weight", "destabilized_form",
           "random_invertible", "grid_values", "identity", "random"]
