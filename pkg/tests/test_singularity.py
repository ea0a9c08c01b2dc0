import itertools
import random
from fractions import Fraction

import pytest
import sympy

from hypersing.errors import ResourceGuardExceeded
from hypersing.poly import Form, act, fermat, parse_form
from hypersing.singularity import (SingularityClass, classify, degenerate_witness, hessian_minors,
                                   is_singular_at, singular_ideals)

from helpers import grid_values, nodal_at_e0, random_form, random_invertible

SMOOTH, NODAL, DEGENERATE = SingularityClass.SMOOTH, SingularityClass.NODAL, SingularityClass.DEGENERATE


def sympy_forms(exprs, n):
    zs = sympy.symbols(f"z0:{n + 1}")
    out = set()
    for e in exprs:
        e = sympy.expand(e)
        if e != 0:
            out.add(parse_form(str(e).replace("**", "^"), n, sympy.Poly(e, *zs).total_degree()))
    return out


def test_singular_ideals_examples():
    jac, nonnode = singular_ideals(fermat(2, 3))
    assert set(jac.generators) == {parse_form(f"3*z{i}^2", 2, 2) for i in range(3)}
    jac, nonnode = singular_ideals(parse_form("z0*z1*z2", 2, 3))
    assert set(jac.generators) == {parse_form(t, 2, 2) for t in ("z1*z2", "z0*z2", "z0*z1")}
    assert len(nonnode.generators) == 3 + 9
    z = sympy.symbols("z0:3")
    hess = sympy.hessian(z[0] * z[1] * z[2], z)
    oracle = sympy_forms([hess.minor_submatrix(i, j).det() for i in range(3) for j in range(3)], 2)
    assert set(hessian_minors(parse_form("z0*z1*z2", 2, 3))) == oracle
    assert parse_form("-z2^2", 2, 2) in oracle
    jac, nonnode = singular_ideals(parse_form("z0 + 2*z1", 2, 1))
    assert nonnode.generators == jac.generators
    with pytest.raises(ValueError):
        singular_ideals(Form(2, 3))


def test_hessian_minors_match_sympy_on_random_forms():
    rng = random.Random(31)
    z = sympy.symbols("z0:3")
    for _ in range(5):
        f = random_form(rng, 2, 3, density=0.5)
        expr = sympy.sympify(str(f).replace("^", "**"), locals={f"z{i}": z[i] for i in range(3)})
        hess = sympy.hessian(expr, z)
        oracle = sympy_forms([hess.minor_submatrix(i, j).det() for i in range(3) for j in range(3)], 2)
        assert set(hessian_minors(f)) == oracle


CATALOG = [
    ("z0*z1*z2", 2, 3, NODAL),
    ("z1^2*z2 - z0^3 - z0^2*z2", 2, 3, NODAL),
    ("z1^2*z2 - z0^3", 2, 3, DEGENERATE),
    ("z0 - z2", 2, 1, SMOOTH),
    ("z0^2 + z1^2 + z2^2", 2, 2, SMOOTH),
    ("z0^2 + z1^2", 2, 2, NODAL),
    ("z0^2", 2, 2, DEGENERATE),
    ("z0^2*z2^2 + z1^4", 2, 4, DEGENERATE),
    ("z0^2*z1^2 + z1^2*z2^2 + z2^2*z0^2", 2, 4, NODAL),
]


@pytest.mark.parametrize("text, n, d, expected", CATALOG)
def test_catalog(text, n, d, expected):
    assert classify(parse_form(text, n, d)).cls is expected


@pytest.mark.parametrize("n, d", [(1, 3), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4)])
def test_fermat_smooth(n, d):
    report = classify(fermat(n, d))
    assert report.cls is SMOOTH and report.nonnode_gb is None


def test_report_json():
    rec = classify(parse_form("z0*z1*z2", 2, 3)).to_json()
    assert rec["class"] == "NODAL"
    assert rec["jacobian_gb"] == ["z0*z1", "z0*z2", "z1*z2"]
    assert rec["nonnode_gb"]
    assert classify(fermat(2, 3)).to_json()["nonnode_gb"] == []


def test_is_singular_at_examples():
    assert is_singular_at(parse_form("z0*z1*z2", 2, 3), (0, 0, 1)) == (True, 1)
    assert is_singular_at(parse_form("z1^2*z2 - z0^3", 2, 3), (0, 0, 1)) == (True, 2)
    assert is_singular_at(fermat(2, 3), (1, 0, 0)) == (False, None)
    with pytest.raises(ValueError):
        is_singular_at(fermat(2, 3), (0, 0, 0))
    with pytest.raises(ValueError):
        is_singular_at(fermat(2, 3), (1, 0))


def test_witness_examples():
    e0 = (1, 0, 0)
    f = degenerate_witness(2, 4, e0)
    assert f == parse_form("z0^2*z2^2", 2, 4)
    assert is_singular_at(f, e0) == (True, 2)
    g = degenerate_witness(3, 3, (1, 0, 0, 0))
    assert g == parse_form("z0*z3^2", 3, 3)
    assert is_singular_at(g, (1, 0, 0, 0)) == (True, 3)
    h = degenerate_witness(2, 4, (1, 1, 1))
    critical, k = is_singular_at(h, (1, 1, 1))
    assert critical and k >= 2
    with pytest.raises(ValueError):
        degenerate_witness(1, 4)
    with pytest.raises(ValueError):
        degenerate_witness(2, 1)


@pytest.mark.parametrize("n, d, p", [
    (2, 3, None), (2, 4, (1, 1, 1)), (2, 5, (0, 2, -1)), (2, 2, (1, 2, 3)),
    (3, 3, (0, 0, 0, 1)), (3, 4, (1, -1, Fraction(1, 2), 2)),
])
def test_witness_degenerate(n, d, p):
    f = degenerate_witness(n, d, p)
    point = p or (1,) + (0,) * n
    critical, k = is_singular_at(f, point)
    assert critical and k >= 2
    assert classify(f).cls is DEGENERATE


def equivariance_pairs(count=50, seed=32):
    rng = random.Random(seed)
    makers = [
        lambda: random_form(rng, 2, rng.randint(2, 4)),
        lambda: nodal_at_e0(rng, 2, rng.randint(3, 4)),
        lambda: random_form(rng, 2, rng.randint(3, 4), density=0.35),
        lambda: degenerate_witness(2, rng.randint(3, 4)),
    ]
    for i in range(count):
        yield makers[i % len(makers)](), random_invertible(rng, 3)


def test_equivariance():
    seen = set()
    for f, g in equivariance_pairs():
        cls = classify(f).cls
        seen.add(cls)
        assert classify(act(g, f)).cls is cls
    assert seen == {SMOOTH, NODAL, DEGENERATE}


def test_scaling_invariance():
    rng = random.Random(33)
    for _ in range(15):
        f = random_form(rng, 2, 3, density=0.5)
        lam = Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2, 7]))
        assert classify(f.scale(lam)).cls is classify(f).cls


def test_pointwise_consistency_and_kernel_floor():
    rng = random.Random(34)
    points = [p for p in itertools.product(grid_values()[:5], repeat=3) if any(p)]
    hits = 0
    for i in range(30):
        f = nodal_at_e0(rng, 2, 3) if i % 2 else random_form(rng, 2, 3, density=0.4)
        cls = classify(f).cls
        for p in points:
            critical, k = is_singular_at(f, p)
            if not critical:
                continue
            hits += 1
            assert k >= 1
            assert cls is not SMOOTH
            if k >= 2:
                assert cls is DEGENERATE
    assert hits


def test_guard_propagates():
    with pytest.raises(ResourceGuardExceeded):
        classify(random_form(random.Random(35), 2, 4), max_pairs=1)
