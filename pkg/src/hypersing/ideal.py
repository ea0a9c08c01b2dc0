"""Buchberger's algorithm over Q in degrevlex, and the only-origin test.

Internally a polynomial is a dict from *encoded* monomials to Python ints.
A monomial (e0, ..., en) is encoded as (e0+...+en, -en, ..., -e0); plain
tuple comparison on encodings is then exactly degrevlex, and monomial
multiplication is still componentwise addition. Coefficients are kept as
content-free integers (fraction-free reduction), converted back to monic
rational polynomials only at the boundary.
"""

from __future__ import annotations

import heapq
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation, ResourceGuardExceeded
from .poly import Exponent, Form, Poly, degrevlex_key

DEFAULT_MAX_PAIRS = 200_000
DEFAULT_MAX_DEGREE = 60


def _enc(m: Exponent) -> tuple[int, ...]:
    return (sum(m),) + tuple(-e for e in reversed(m))


def _dec(e: tuple[int, ...]) -> Exponent:
    return tuple(-x for x in reversed(e[1:]))


def _divides(a, b) -> bool:
    # a | b on encodings: every exponent of a is <= that of b
    return all(x >= y for x, y in zip(a[1:], b[1:]))


def _lcm(a, b):
    body = tuple(min(x, y) for x, y in zip(a[1:], b[1:]))
    return (-sum(body),) + body


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a[1:], b[1:]))


def _shift(p: dict, mono, coeff: int) -> dict:
    return {tuple(x + y for x, y in zip(m, mono)): c * coeff for m, c in p.items()}


def _quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _content_free(p: dict) -> dict:
    if not p:
        return p
    g = 0
    for c in p.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    lead = p[max(p)]
    if lead < 0:
        g = -g
    if g == 1:
        return p
    return {m: c // g for m, c in p.items()}


def _to_internal(p: Poly) -> tuple[dict, Fraction]:
    """Integer encoding of p together with the factor s with internal = s * p."""
    terms = p.terms
    if not terms:
        return {}, Fraction(1)
    den = 1
    for c in terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return {_enc(m): int(c * den) for m, c in terms.items()}, Fraction(den)


def _to_poly(p: dict, n: int, scale: Fraction = Fraction(1), monic: bool = False) -> Poly:
    if monic and p:
        scale = Fraction(p[max(p)])
    terms = {_dec(m): Fraction(c) / scale for m, c in p.items()}
    degrees = {sum(m) for m in terms}
    if len(degrees) == 1:
        return Form._raw(n, terms, d=degrees.pop())
    return Poly._raw(n, terms)


@dataclass
class _Elem:
    lm: tuple
    terms: dict


class _Guard:
    def __init__(self, max_pairs, max_degree, timeout):
        self.max_pairs = max_pairs
        self.max_degree = max_degree
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.pairs = 0

    def pair(self):
        self.pairs += 1
        if self.pairs > self.max_pairs:
            raise ResourceGuardExceeded(f"S-pair budget of {self.max_pairs} exceeded")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceGuardExceeded("time budget exceeded")

    def degree(self, lm):
        if lm[0] > self.max_degree:
            raise ResourceGuardExceeded(f"degree {lm[0]} exceeds the cap of {self.max_degree}")


def _top_reduce(f: dict, basis: Sequence[_Elem]) -> dict:
    """Reduce the lead term of f until it is not divisible by any lead monomial."""
    while f:
        lm = max(f)
        for g in basis:
            if _divides(g.lm, lm):
                break
        else:
            return _content_free(f)
        f = _reduce_step(f, lm, g)
    return f


def _reduce_step(f: dict, mono, g: _Elem) -> dict:
    c = f[mono]
    gl = g.terms[g.lm]
    q = math.gcd(c, gl)
    a, b = gl // q, c // q
    if a < 0:
        a, b = -a, -b
    if a != 1:
        f = {m: v * a for m, v in f.items()}
    shift = _quot(mono, g.lm)
    for m, v in g.terms.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        nv = f.get(mm, 0) - b * v
        if nv:
            f[mm] = nv
        else:
            del f[mm]
    return _content_free(f)


def _full_reduce(f: dict, basis: Sequence[_Elem], rng: random.Random | None = None) -> tuple[dict, Fraction]:
    """Reduce every term of f; return (r, s) where r == s * (true remainder)."""
    f = dict(f)
    scale = Fraction(1)
    stuck: set = set()
    while True:
        cands = [m for m in f if m not in stuck]
        if not cands:
            return f, scale
        mono = max(cands)
        divisors = [g for g in basis if _divides(g.lm, mono)]
        if not divisors:
            stuck.add(mono)
            continue
        g = rng.choice(divisors) if rng is not None else divisors[0]
        c = f[mono]
        gl = g.terms[g.lm]
        q = math.gcd(c, gl)
        a, b = gl // q, c // q
        if a < 0:
            a, b = -a, -b
        if a != 1:
            f = {m: v * a for m, v in f.items()}
            scale *= a
        shift = _quot(mono, g.lm)
        for m, v in g.terms.items():
            mm = tuple(x + y for x, y in zip(m, shift))
            nv = f.get(mm, 0) - b * v
            if nv:
                f[mm] = nv
            else:
                del f[mm]
        if f:
            g_ = 0
            for v in f.values():
                g_ = math.gcd(g_, v)
                if g_ == 1:
                    break
            if g_ > 1:
                f = {m: v // g_ for m, v in f.items()}
                scale /= g_


@dataclass(frozen=True)
class Ideal:
    """Ideal of Q[z0..zn] given by nonzero generators."""

    n: int
    generators: tuple[Poly, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if g.n != self.n:
                raise ValueError(f"generator in n={g.n}, ideal in n={self.n}")
            if not g:
                raise ValueError("zero generator")
        object.__setattr__(self, "generators", gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced degrevlex Groebner basis with monic elements."""

    n: int
    basis: tuple[Poly, ...]
    order: str = field(default="degrevlex")

    def lead_monomials(self) -> list[Exponent]:
        return [g.lead_monomial() for g in self.basis]

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.basis)

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self.basis)

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    def dump(self) -> list[str]:
        return [str(g) for g in self.basis]

    def __len__(self):
        return len(self.basis)


def normal_form(f: Poly, basis: Sequence[Poly], rng: random.Random | None = None) -> Poly:
    """Remainder of multivariate division of f by basis (degrevlex).

    Reducers are tried in the order given; pass ``rng`` to pick a random
    applicable reducer at each step instead.
    """
    if not basis:
        raise ValueError("empty basis")
    for g in basis:
        if g.n != f.n:
            raise ValueError(f"dimension mismatch: {g.n} vs {f.n}")
    elems = []
    for g in basis:
        t, _ = _to_internal(g)
        if t:
            elems.append(_Elem(max(t), t))
    ft, fscale = _to_internal(f)
    r, s = _full_reduce(ft, elems, rng)
    result = _to_poly(r, f.n, s * fscale)
    if isinstance(f, Form) and all(sum(m) == f.d for m in result.terms):
        return Form._raw(f.n, result.terms, d=f.d)
    return Poly._raw(f.n, result.terms)


def _update(polys: list[_Elem], active: list[int], pairs: list, h: int) -> list[int]:
    """Gebauer-Moeller installation of element h; returns the new active set."""
    hl = polys[h].lm
    cand = [(_lcm(polys[i].lm, hl), i) for i in active]
    kept: list[tuple] = []
    while cand:
        lij, i = cand.pop(0)
        if _coprime(polys[i].lm, hl) or not any(
                _divides(other, lij) for other, _ in cand + kept):
            kept.append((lij, i))
    new_pairs = [(lij, i, h) for lij, i in kept if not _coprime(polys[i].lm, hl)]

    survivors = []
    for item in pairs:
        lij, i, j = item
        if (_divides(hl, lij)
                and _lcm(polys[i].lm, hl) != lij
                and _lcm(polys[j].lm, hl) != lij):
            continue
        survivors.append(item)
    survivors.extend(new_pairs)
    heapq.heapify(survivors)
    pairs[:] = survivors

    new_active = [i for i in active if not _divides(hl, polys[i].lm)]
    new_active.append(h)
    return new_active


def _spoly(f: _Elem, g: _Elem, lcm) -> dict:
    cf, cg = f.terms[f.lm], g.terms[g.lm]
    q = math.gcd(cf, cg)
    a = _shift(f.terms, _quot(lcm, f.lm), cg // q)
    for m, v in _shift(g.terms, _quot(lcm, g.lm), cf // q).items():
        nv = a.get(m, 0) - v
        if nv:
            a[m] = nv
        else:
            a.pop(m, None)
    return a


def buchberger(ideal: Ideal, max_pairs: int = DEFAULT_MAX_PAIRS,
               max_degree: int = DEFAULT_MAX_DEGREE,
               timeout: float | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` (normal selection strategy).

    Raises ResourceGuardExceeded when the S-pair count, an intermediate
    degree or the wall-clock timeout passes its cap.
    """
    guard = _Guard(max_pairs, max_degree, timeout)
    homogeneous = ideal.is_homogeneous()
    n = ideal.n
    polys: list[_Elem] = []
    active: list[int] = []
    pairs: list = []

    def install(t: dict):
        t = _content_free(t)
        lm = max(t)
        guard.degree(lm)
        if homogeneous and len({m[0] for m in t}) != 1:
            raise InvariantViolation("Buchberger produced an inhomogeneous element")
        polys.append(_Elem(lm, t))
        return _update(polys, active, pairs, len(polys) - 1)

    gens = sorted((_to_internal(g)[0] for g in ideal.generators), key=lambda t: (max(t), len(t)))
    for t in gens:
        t = _top_reduce(t, [polys[i] for i in active])
        if t:
            active = install(t)

    while pairs:
        lij, i, j = heapq.heappop(pairs)
        guard.pair()
        s = _spoly(polys[i], polys[j], lij)
        if not s:
            continue
        s = _top_reduce(s, [polys[k] for k in active])
        if s:
            active = install(s)

    # minimal basis, then tail-reduce each element against the others
    # the active set is already minimal: new elements are top-reduced and
    # evict every active element whose lead monomial they divide
    minimal = sorted((polys[i] for i in active), key=lambda e: e.lm)
    reduced = []
    for k, e in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lead = {e.lm: e.terms[e.lm]}
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        r, s = _full_reduce(tail, others)
        # r == s * reduced tail; rebuild the element with the lead scaled to match
        full = {m: Fraction(c) / s for m, c in r.items()}
        full.update({m: Fraction(c) for m, c in lead.items()})
        reduced.append(full)
    out = []
    for full in reduced:
        lm = max(full)
        lc = full[lm]
        terms = {_dec(m): c / lc for m, c in full.items()}
        degrees = {sum(m) for m in terms}
        if len(degrees) == 1:
            out.append(Form._raw(n, terms, d=degrees.pop()))
        else:
            out.append(Poly._raw(n, terms))
    out.sort(key=lambda g: (g.total_degree, tuple(-x for x in degrevlex_key(g.lead_monomial())[1])))
    gb = GroebnerBasis(n, tuple(out))
    for g in ideal.generators:
        if gb.reduce(g):
            raise InvariantViolation(f"generator {g} does not reduce to zero")
    return gb


def only_origin(gb: GroebnerBasis) -> bool:
    """True iff the affine zero set of the (homogeneous) ideal is {0} or empty.

    Decided from the lead terms: the quotient is finite-dimensional exactly
    when every variable has a pure power among them.
    """
    if not gb.is_homogeneous():
        raise ValueError("only_origin needs a homogeneous basis")
    leads = gb.lead_monomials()
    if any(sum(m) == 0 for m in leads):
        return True
    nvars = gb.n + 1
    for k in range(nvars):
        if not any(m[k] > 0 and sum(m) == m[k] for m in leads):
            return False
    return True
