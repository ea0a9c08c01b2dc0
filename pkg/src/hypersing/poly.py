"""Sparse multivariate polynomials over the rationals in variables z0..zn.

A polynomial is a mapping from exponent tuples (one entry per variable) to
nonzero ``Fraction`` coefficients::

    z1^2*z2 - z0^3   ->   {(0, 2, 1): 1, (3, 0, 0): -1}

``Poly`` is the general (possibly inhomogeneous) type used by the ideal
machinery. ``Form`` is a homogeneous polynomial with a declared degree; it is
the object every classification and stability routine works on.

Terms are printed in degrevlex order with z0 > z1 > ... > zn.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

from .errors import ParseError
from .linear import Matrix, as_matrix, det

Exponent = tuple[int, ...]


def degrevlex_key(m: Exponent) -> tuple:
    """Sort key: larger key means larger monomial in degrevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def _mono_str(m: Exponent) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"z{i}")
        elif e > 1:
            parts.append(f"z{i}^{e}")
    return "*".join(parts)


class Poly:
    """Immutable sparse polynomial in n+1 variables with rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if n < 0:
            raise ValueError("n must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != n + 1 or any(e < 0 for e in m):
                raise ValueError(f"bad exponent {m} for n={n}")
            c = Fraction(c)
            clean[m] = clean.get(m, 0) + c
        self.n = n
        self._terms = {m: c for m, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, n, terms, **extra):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        for k, v in extra.items():
            setattr(obj, k, v)
        return obj

    def _wrap(self, terms: dict[Exponent, Fraction], degree_shift: int | None = 0) -> "Poly":
        return Poly._raw(self.n, terms)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return self.n + 1

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def support(self) -> list[Exponent]:
        return sorted(self._terms, key=degrevlex_key, reverse=True)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms from the largest monomial down."""
        return [(m, self._terms[m]) for m in self.support()]

    @property
    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def lead_monomial(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no lead monomial")
        return max(self._terms, key=degrevlex_key)

    def lead_coefficient(self) -> Fraction:
        return self._terms[self.lead_monomial()]

    def monic(self) -> "Poly":
        lc = self.lead_coefficient()
        return self._wrap({m: c / lc for m, c in self._terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "Poly") -> None:
        if other.n != self.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")

    def _add_terms(self, other: "Poly", sign: int) -> dict[Exponent, Fraction]:
        self._check_compatible(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + sign * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return _combine(self, other, self._add_terms(other, 1))

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return _combine(self, other, self._add_terms(other, -1))

    def __neg__(self) -> "Poly":
        return self._wrap({m: -c for m, c in self._terms.items()})

    def scale(self, k) -> "Poly":
        k = Fraction(k)
        if k == 0:
            return self._wrap({})
        return self._wrap({m: c * k for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check_compatible(other)
            out: dict[Exponent, Fraction] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
            out = {m: c for m, c in out.items() if c}
            return _product(self, other, out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        result = self.one_like()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def one_like(self) -> "Poly":
        return Poly._raw(self.n, {(0,) * (self.n + 1): Fraction(1)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation --------------------------------------------

    def diff(self, k: int) -> "Poly":
        """Partial derivative with respect to z_k."""
        if not 0 <= k <= self.n:
            raise ValueError(f"variable index {k} out of range")
        out = {}
        for m, c in self._terms.items():
            e = m[k]
            if e:
                mm = list(m)
                mm[k] = e - 1
                out[tuple(mm)] = c * e
        return self._wrap(out, -1)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n + 1:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n + 1}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x**e
            total += v
        return total

    __call__ = evaluate

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = _mono_str(m)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, {str(self)!r})"


def _combine(a: Poly, b: Poly, terms) -> Poly:
    if isinstance(a, Form) and isinstance(b, Form):
        if a.d != b.d:
            raise ValueError(f"adding forms of different degrees {a.d} and {b.d}")
        return Form._raw(a.n, terms, d=a.d)
    return Poly._raw(a.n, terms)


def _product(a: Poly, b: Poly, terms) -> Poly:
    if isinstance(a, Form) and isinstance(b, Form):
        return Form._raw(a.n, terms, d=a.d + b.d)
    return Poly._raw(a.n, terms)


class Form(Poly):
    """Homogeneous polynomial of declared degree d in z0..zn.

    The zero form is allowed as a value (it shows up as a derivative or a
    Hessian entry) but classification entry points reject it.
    """

    __slots__ = ("d",)

    def __init__(self, n: int, d: int, terms: Mapping[Exponent, object] | Iterable = ()):
        super().__init__(n, terms)
        if d < 0:
            raise ValueError("degree must be non-negative")
        bad = [m for m in self._terms if sum(m) != d]
        if bad:
            raise ValueError(f"monomial {bad[0]} is not of degree {d}")
        self.d = d

    def _wrap(self, terms, degree_shift=0):
        return Form._raw(self.n, terms, d=max(self.d + degree_shift, 0))

    def one_like(self) -> "Form":
        return Form._raw(self.n, {(0,) * (self.n + 1): Fraction(1)}, d=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Form) and self.d != other.d:
            return False
        return super().__eq__(other)

    __hash__ = Poly.__hash__

    def __repr__(self) -> str:
        return f"Form(n={self.n}, d={self.d}, {str(self)!r})"

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "Form":
        exponent = tuple(exponent)
        return cls(len(exponent) - 1, sum(exponent), {exponent: coeff})

    @classmethod
    def variable(cls, n: int, k: int) -> "Form":
        m = [0] * (n + 1)
        m[k] = 1
        return cls(n, 1, {tuple(m): 1})

    @classmethod
    def from_poly(cls, p: Poly, d: int | None = None) -> "Form":
        if d is None:
            d = max(p.total_degree, 0)
        return cls(p.n, d, p.terms)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"z(\d+)(?:\^(\d+))?|(\d+)(?:/(\d+))?|([+\-*])")


def _tokenize(text: str) -> list[tuple]:
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial")
    tokens = []
    pos = 0
    while pos < len(s):
        mt = _TOKEN.match(s, pos)
        if mt is None:
            raise ParseError(f"unexpected character {s[pos]!r} at position {pos}")
        var, exp, num, den, op = mt.groups()
        if var is not None:
            tokens.append(("var", int(var), int(exp) if exp is not None else 1))
        elif num is not None:
            if den is not None and int(den) == 0:
                raise ParseError("zero denominator")
            tokens.append(("num", Fraction(int(num), int(den) if den else 1)))
        else:
            tokens.append(("op", op))
        pos = mt.end()
    return tokens


def parse_poly(text: str, n: int) -> Poly:
    """Parse text in the polynomial grammar without any degree checks."""
    tokens = _tokenize(text)
    pos = 0
    terms: list[tuple[Exponent, Fraction]] = []

    def expect_term(sign: int):
        nonlocal pos
        coeff = Fraction(sign)
        exps = [0] * (n + 1)
        seen_factor = False
        if pos < len(tokens) and tokens[pos][0] == "num":
            coeff *= tokens[pos][1]
            pos += 1
            if pos < len(tokens) and tokens[pos] == ("op", "*"):
                pos += 1
                if pos >= len(tokens) or tokens[pos][0] != "var":
                    raise ParseError("expected a variable after '*'")
            else:
                terms.append((tuple(exps), coeff))
                return
        while pos < len(tokens) and tokens[pos][0] == "var":
            _, idx, e = tokens[pos]
            if idx > n:
                raise ParseError(f"variable z{idx} out of range for n={n}")
            exps[idx] += e
            seen_factor = True
            pos += 1
            if pos < len(tokens) and tokens[pos] == ("op", "*"):
                pos += 1
                if pos >= len(tokens) or tokens[pos][0] != "var":
                    raise ParseError("expected a variable after '*'")
            else:
                break
        if not seen_factor:
            raise ParseError("expected a term")
        terms.append((tuple(exps), coeff))

    sign = 1
    if tokens[0] == ("op", "-"):
        sign = -1
        pos = 1
    expect_term(sign)
    while pos < len(tokens):
        tok = tokens[pos]
        if tok not in (("op", "+"), ("op", "-")):
            raise ParseError(f"expected '+' or '-', got {tok[-1]!r}")
        pos += 1
        expect_term(1 if tok[1] == "+" else -1)
    return Poly(n, terms)


def parse_form(text: str, n: int, d: int) -> Form:
    """Parse a nonzero homogeneous polynomial of degree d in z0..zn."""
    if n < 1 or d < 1:
        raise ParseError("need n >= 1 and d >= 1")
    p = parse_poly(text, n)
    for m in p.terms:
        if sum(m) != d:
            raise ParseError(f"term {_mono_str(m) or '1'} has degree {sum(m)}, expected {d}")
    if not p:
        raise ParseError("polynomial is zero")
    return Form(n, d, p.terms)


# -- calculus and coordinate changes ----------------------------------------


def gradient(f: Form) -> tuple[Form, ...]:
    return tuple(f.diff(k) for k in range(f.n + 1))


def derivatives(f: Form) -> tuple[tuple[Form, ...], tuple[tuple[Form, ...], ...]]:
    """Return (gradient, hessian) as Forms of degrees d-1 and d-2."""
    grad = gradient(f)
    hess = tuple(tuple(g.diff(k) for k in range(f.n + 1)) for g in grad)
    return grad, hess


def evaluate_matrix(entries: Sequence[Sequence[Poly]], point: Sequence) -> Matrix:
    return tuple(tuple(e.evaluate(point) for e in row) for row in entries)


def poly_det(entries: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a small square matrix of polynomials (Laplace expansion)."""
    size = len(entries)
    if size == 1:
        return entries[0][0]
    total = None
    for j in range(size):
        if not entries[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = entries[0][j] * poly_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        # all first-row entries vanish; return a zero of the right shape
        return entries[0][0] * poly_det([row[1:] for row in entries[1:]])
    return total


def _int_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return out


def act(g, f: Form) -> Form:
    """Change of variables z_k -> sum_j g[k][j] z_j, i.e. f composed with g.

    This is a right action: act(g, act(h, f)) == act(h @ g, f).
    """
    g = as_matrix(g)
    size = f.n + 1
    if len(g) != size or any(len(row) != size for row in g):
        raise ValueError(f"matrix must be {size}x{size}")
    if det(g) == 0:
        raise ValueError("matrix is singular")
    # integer arithmetic throughout: scale g by den_g and f by den_f
    den_g = math.lcm(*(x.denominator for row in g for x in row))
    den_f = math.lcm(*(c.denominator for c in f._terms.values())) if f else 1
    unit = [tuple(int(i == j) for i in range(size)) for j in range(size)]
    linear = [{unit[j]: int(g[k][j] * den_g) for j in range(size) if g[k][j]} for k in range(size)]
    powers: dict[tuple[int, int], dict] = {}

    def power(k: int, e: int) -> dict:
        if (k, e) not in powers:
            powers[(k, e)] = linear[k] if e == 1 else _int_mul(power(k, e - 1), linear[k])
        return powers[(k, e)]

    acc: dict[Exponent, int] = {}
    for m, c in f._terms.items():
        term = {(0,) * size: int(c * den_f)}
        for k, e in enumerate(m):
            if e:
                term = _int_mul(term, power(k, e))
        for mm, cc in term.items():
            acc[mm] = acc.get(mm, 0) + cc
    scale = den_f * den_g**f.d
    return Form._raw(f.n, {m: Fraction(c, scale) for m, c in acc.items() if c}, d=f.d)


def permute(f: Form, perm: Sequence[int]) -> Form:
    """Relabel variables: the new coordinate z_i is the old z_{perm[i]}."""
    if sorted(perm) != list(range(f.n + 1)):
        raise ValueError(f"not a permutation of 0..{f.n}: {perm}")
    terms = {tuple(m[p] for p in perm): c for m, c in f.terms.items()}
    return Form(f.n, f.d, terms)


def monomials(n: int, d: int) -> list[Exponent]:
    """All exponent vectors of degree d in n+1 variables, degrevlex-descending."""
    out = [m for m in _cartesian(range(d + 1), repeat=n + 1) if sum(m) == d]
    return sorted(out, key=degrevlex_key, reverse=True)


def fermat(n: int, d: int) -> Form:
    return Form(n, d, {tuple(d if i == k else 0 for i in range(n + 1)): 1 for k in range(n + 1)})
