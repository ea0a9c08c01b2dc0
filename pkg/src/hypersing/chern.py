"""Cohomology of the projectivized tangent bundle P(T_X) and its pushforward.

H*(P(T_X)) = H*(X)[c] / (c^n + c_1(T) c^(n-1) + ... + c_n(T)),  n = dim X,

with c the first Chern class of O(1). Two models of the base H*(X):

* CONCRETE: X = P^n, H*(X) = Z[H]/(H^(n+1)), c(T) = (1+H)^(n+1).
* FORMAL: an arbitrary X of dimension n, modelled by polynomials in the
  Chern roots t1..tn of T_X and l = c_1(L), truncated above degree n.

Both bases are "polynomials truncated above total degree n", so a single
class type covers them. Pushing forward along P(T_X) -> X keeps the
coefficient of c^(n-1) after reduction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Mapping, Union


class Mode(str, enum.Enum):
    CONCRETE = "CONCRETE"
    FORMAL = "FORMAL"


FORMAL = Mode.FORMAL

Degree = Union[int, Mode]

# base monomial = exponent tuple over the base variables
BaseMono = tuple[int, ...]


@dataclass(frozen=True)
class ChernRing:
    n: int
    mode: Mode = Mode.CONCRETE

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def base_names(self) -> tuple[str, ...]:
        if self.mode is Mode.CONCRETE:
            return ("H",)
        return tuple(f"t{i}" for i in range(1, self.n + 1)) + ("l",)

    @property
    def nbase(self) -> int:
        return len(self.base_names)

    def _unit(self, k: int = 0, mono: BaseMono | None = None, coeff: int = 1) -> "CohomologyClass":
        mono = mono if mono is not None else (0,) * self.nbase
        return CohomologyClass(self, {(k, mono): coeff})

    def one(self) -> "CohomologyClass":
        return self._unit()

    def zero(self) -> "CohomologyClass":
        return CohomologyClass(self, {})

    @property
    def c(self) -> "CohomologyClass":
        return self._unit(1)

    def base_var(self, name: str) -> "CohomologyClass":
        idx = self.base_names.index(name)
        return self._unit(0, tuple(int(i == idx) for i in range(self.nbase)))

    @property
    def H(self) -> "CohomologyClass":
        if self.mode is not Mode.CONCRETE:
            raise AttributeError("H only exists for X = P^n")
        return self.base_var("H")

    @property
    def ell(self) -> "CohomologyClass":
        if self.mode is not Mode.FORMAL:
            raise AttributeError("l = c_1(L) is a formal variable; on P^n use d*H")
        return self.base_var("l")

    @cached_property
    def tangent_chern(self) -> tuple["CohomologyClass", ...]:
        """c_0(T_X), ..., c_n(T_X)."""
        if self.mode is Mode.CONCRETE:
            return tuple(self.H ** i * comb(self.n + 1, i) for i in range(self.n + 1))
        out = [self.one()]
        roots = [self.base_var(f"t{i}") for i in range(1, self.n + 1)]
        for i in range(1, self.n + 1):
            total = self.zero()
            for idx in combinations(range(self.n), i):
                term = self.one()
                for j in idx:
                    term = term * roots[j]
                total = total + term
            out.append(total)
        return tuple(out)

    def relation(self) -> "CohomologyClass":
        """c^n + c_1(T) c^(n-1) + ... + c_n(T), unreduced."""
        total = self.zero()
        for i, ci in enumerate(self.tangent_chern):
            total = total + ci * self.c ** (self.n - i)
        return total


class CohomologyClass:
    """Integer combination of c^k * (base monomial), base truncated above degree n."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: ChernRing, terms: Mapping[tuple[int, BaseMono], int]):
        self.ring = ring
        clean = {}
        for (k, mono), a in terms.items():
            if a and sum(mono) <= ring.n:
                clean[(k, tuple(mono))] = clean.get((k, tuple(mono)), 0) + int(a)
        self._terms = {key: a for key, a in clean.items() if a}

    @property
    def terms(self) -> dict[tuple[int, BaseMono], int]:
        return dict(self._terms)

    def _check(self, other: "CohomologyClass") -> None:
        if other.ring != self.ring:
            raise ValueError("classes live in different rings")

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        out = dict(self._terms)
        for key, a in other._terms.items():
            out[key] = out.get(key, 0) + a
        return CohomologyClass(self.ring, out)

    def __neg__(self) -> "CohomologyClass":
        return CohomologyClass(self.ring, {k: -a for k, a in self._terms.items()})

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-other)

    def __mul__(self, other) -> "CohomologyClass":
        if isinstance(other, int):
            return CohomologyClass(self.ring, {k: a * other for k, a in self._terms.items()})
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for (k1, m1), a1 in self._terms.items():
            for (k2, m2), a2 in other._terms.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                if sum(mono) > self.ring.n:
                    continue
                key = (k1 + k2, mono)
                out[key] = out.get(key, 0) + a1 * a2
        return CohomologyClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CohomologyClass":
        result = self.ring.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {k + sum(m) for k, m in self._terms}

    def max_c_power(self) -> int:
        return max((k for k, _ in self._terms), default=-1)

    def reduce(self) -> "CohomologyClass":
        """Normal form: rewrite c^k for k >= n through the bundle relation."""
        n = self.ring.n
        lower = self.ring.tangent_chern[1:]
        terms = dict(self._terms)
        while True:
            high = [key for key in terms if key[0] >= n]
            if not high:
                return CohomologyClass(self.ring, terms)
            k, mono = max(high)
            a = terms.pop((k, mono))
            # c^k w = -sum_{i>=1} c^(k-i) c_i(T) w
            for i, ci in enumerate(lower, start=1):
                for (_, m2), b in ci._terms.items():
                    mm = tuple(x + y for x, y in zip(mono, m2))
                    if sum(mm) > n:
                        continue
                    key = (k - i, mm)
                    v = terms.get(key, 0) - a * b
                    if v:
                        terms[key] = v
                    else:
                        terms.pop(key, None)

    def is_base(self) -> bool:
        return all(k == 0 for k, _ in self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = ("c",) + self.ring.base_names

        def key(item):
            (k, m), _ = item
            exps = (k,) + m
            return (sum(exps), tuple(-e for e in reversed(exps)))

        parts = []
        for (k, m), a in sorted(self._terms.items(), key=key, reverse=True):
            exps = (k,) + m
            factors = [nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, exps) if e]
            body = "*".join(factors)
            mag = abs(a)
            text = body if body and mag == 1 else (f"{mag}*{body}" if body else str(mag))
            if not parts:
                parts.append(text if a > 0 else "-" + text)
            else:
                parts.append((" + " if a > 0 else " - ") + text)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"CohomologyClass(n={self.ring.n}, {self.ring.mode.value}, {str(self)!r})"

    def to_json(self) -> list[list[int]]:
        """[a, k, j] triples for a*c^k*H^j (CONCRETE only), in print order."""
        if self.ring.mode is not Mode.CONCRETE:
            raise ValueError("JSON triples are defined for X = P^n only")
        items = sorted(self._terms.items(), key=lambda it: (it[0][0] + it[0][1][0], it[0][0]), reverse=True)
        return [[a, k, m[0]] for (k, m), a in items]


def _ring(n: int, d: Degree) -> ChernRing:
    return ChernRing(n, Mode.FORMAL if d is Mode.FORMAL or d == "FORMAL" else Mode.CONCRETE)


def _line_class(ring: ChernRing, d: Degree) -> CohomologyClass:
    if ring.mode is Mode.FORMAL:
        return ring.ell
    return ring.H * int(d)


def twisted_cotangent_chern(n: int, d: Degree) -> list[CohomologyClass]:
    """c_0 .. c_n of E = L (x) Omega^1_X, with L = O(d) on P^n or formal."""
    if n < 1:
        raise ValueError("n must be at least 1")
    ring = _ring(n, d)
    l = _line_class(ring, d)
    if ring.mode is Mode.FORMAL:
        # Chern roots of E are l - t_i
        total = [ring.one()] + [ring.zero()] * n
        for i in range(1, n + 1):
            root = l - ring.base_var(f"t{i}")
            for k in range(n, 0, -1):
                total[k] = total[k] + total[k - 1] * root
        return total
    omega = [ci * (-1) ** i for i, ci in enumerate(ring.tangent_chern)]
    # c_k(F (x) M) = sum_i C(r-i, k-i) c_i(F) c_1(M)^(k-i), F of rank r = n
    return [
        sum((omega[i] * l ** (k - i) * comb(n - i, k - i) for i in range(k + 1)), ring.zero())
        for k in range(n + 1)
    ]


def euler_class(n: int, d: Degree, reduced: bool = True) -> CohomologyClass:
    """Top Chern class of p*(E) (x) O(1): sum_i c^(n-i) c_i(E)."""
    ce = twisted_cotangent_chern(n, d)
    ring = ce[0].ring
    e = sum((ring.c ** (n - i) * ci for i, ci in enumerate(ce)), ring.zero())
    return e.reduce() if reduced else e


def pushforward(x: CohomologyClass) -> CohomologyClass:
    """Fibre integration P(T_X) -> X: the c^(n-1) coefficient of the normal form."""
    n = x.ring.n
    r = x.reduce()
    return CohomologyClass(x.ring, {(0, m): a for (k, m), a in r.terms.items() if k == n - 1})


def pushforward_euler(n: int, d: Degree) -> CohomologyClass:
    return pushforward(euler_class(n, d, reduced=False))


def expected_pushforward(n: int, d: Degree) -> CohomologyClass:
    """Closed form n*c_1(L) - 2*c_1(T_X); on P^n this is (nd - 2(n+1)) H."""
    ring = _ring(n, d)
    return _line_class(ring, d) * n - ring.tangent_chern[1] * 2

