"""Exact feasibility of rational linear inequality systems by Fourier-Motzkin.

A system is a list of rows (a, b) meaning a . x <= b. Variables are
eliminated from the last to the first; the intermediate systems are kept so a
feasible point can be rebuilt by back-substitution, choosing at each step the
simplest rational in the admissible interval.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Row = tuple[tuple[Fraction, ...], Fraction]


def _normalize(a: Sequence[Fraction], b: Fraction) -> Row:
    # scale to coprime integer coefficients so duplicates collapse
    vals = [Fraction(x) for x in a] + [Fraction(b)]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints[:-1]:
        g = math.gcd(g, v)
    if g == 0:
        g = 1
    return tuple(Fraction(v, g) for v in ints[:-1]), Fraction(ints[-1], g)


def _clean(rows: list[Row]) -> list[Row] | None:
    """Normalize, drop constant rows (None if one is violated), deduplicate."""
    best: dict[tuple, Fraction] = {}
    for a, b in rows:
        a, b = _normalize(a, b)
        if not any(a):
            if b < 0:
                return None
            continue
        if a not in best or b < best[a]:
            best[a] = b
    return sorted(best.items())


def _eliminate(rows: list[Row], j: int) -> list[Row]:
    upper = [r for r in rows if r[0][j] > 0]
    lower = [r for r in rows if r[0][j] < 0]
    out = [r for r in rows if r[0][j] == 0]
    for au, bu in upper:
        for al, bl in lower:
            cu, cl = au[j], -al[j]
            a = tuple(cl * x + cu * y for x, y in zip(au, al))
            out.append((a, cl * bu + cu * bl))
    return out


def simplest_in(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """A small-height rational in [lo, hi]; integers nearest 0 are preferred."""
    if lo is not None and hi is not None and lo > hi:
        raise ValueError("empty interval")
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(min(0, math.floor(hi)))
    if hi is None:
        return Fraction(max(0, math.ceil(lo)))
    q = 1
    while True:
        p_lo, p_hi = math.ceil(lo * q), math.floor(hi * q)
        if p_lo <= p_hi:
            p = min(max(0, p_lo), p_hi)
            return Fraction(p, q)
        q += 1


def feasible_point(rows: Sequence[tuple[Sequence, object]], nvars: int) -> tuple[Fraction, ...] | None:
    """A rational x with a . x <= b for every row, or None if none exists."""
    system = _clean([(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in rows])
    if system is None:
        return None
    for a, _ in system:
        if len(a) != nvars:
            raise ValueError("row length does not match the number of variables")
    stages = [system]
    for j in range(nvars - 1, -1, -1):
        system = _clean(_eliminate(system, j))
        if system is None:
            return None
        stages.append(system)
    # stages[k] involves variables 0 .. nvars-1-k
    x: list[Fraction] = []
    for j in range(nvars):
        rows_j = stages[nvars - 1 - j]
        lo = hi = None
        for a, b in rows_j:
            coef = a[j]
            if coef == 0:
                continue
            rest = b - sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))
            bound = rest / coef
            if coef > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        x.append(simplest_in(lo, hi))
    for a, b in stages[0]:
        if sum((ai * xi for ai, xi in zip(a, x)), Fraction(0)) > b:
            raise AssertionError("back-substitution produced an infeasible point")
    return tuple(x)
