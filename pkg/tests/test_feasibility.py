import itertools
import random
from fractions import Fraction

import pytest

from hypersing import linear
from hypersing.feasibility import feasible_point, simplest_in


def satisfies(rows, x):
    return all(sum(Fraction(a) * v for a, v in zip(coeffs, x)) <= b for coeffs, b in rows)


def test_simplest_in():
    assert simplest_in(Fraction(-3, 2), Fraction(5)) == 0
    assert simplest_in(Fraction(1, 3), Fraction(1, 2)) == Fraction(1, 2)
    assert simplest_in(Fraction(7, 3), None) == 3
    assert simplest_in(None, Fraction(-7, 3)) == -3
    assert simplest_in(Fraction(2, 7), Fraction(2, 7)) == Fraction(2, 7)
    with pytest.raises(ValueError):
        simplest_in(Fraction(1), Fraction(0))


def test_small_systems():
    # x + y <= 1, -x <= 0, -y <= 0, x - y <= -1/2
    rows = [((1, 1), 1), ((-1, 0), 0), ((0, -1), 0), ((1, -1), Fraction(-1, 2))]
    x = feasible_point(rows, 2)
    assert x is not None and satisfies(rows, x)
    assert feasible_point([((1,), 0), ((-1,), -1)], 1) is None
    assert feasible_point([((0, 0), -1)], 2) is None
    assert feasible_point([], 3) == (0, 0, 0)


def vertex_oracle(rows, nvars):
    """A bounded nonempty polyhedron has a vertex: try every square subsystem."""
    for subset in itertools.combinations(rows, nvars):
        a = [list(r[0]) for r in subset]
        if linear.det(a) == 0:
            continue
        x = linear.matvec(linear.inverse(a), [Fraction(r[1]) for r in subset])
        if satisfies(rows, x):
            return x
    return None


def test_against_vertex_enumeration():
    rng = random.Random(51)
    seen = {True: 0, False: 0}
    for _ in range(150):
        nvars = rng.randint(1, 3)
        rows = [(tuple(rng.randint(-2, 2) for _ in range(nvars)), rng.randint(-3, 3))
                for _ in range(rng.randint(1, 6))]
        # a bounding box keeps the region a polytope
        for j in range(nvars):
            for sign in (1, -1):
                e = [0] * nvars
                e[j] = sign
                rows.append((tuple(e), 3))
        x = feasible_point(rows, nvars)
        if x is not None:
            assert satisfies(rows, x)
        oracle = vertex_oracle(rows, nvars)
        assert (x is not None) == (oracle is not None)
        seen[oracle is not None] += 1
    assert seen[True] and seen[False]
