"""Hilbert-Mumford weights for diagonal one-parameter subgroups of SL(n+1).

A diagonal subgroup t -> diag(t^r0, ..., t^rn) with integer weights summing
to zero acts on a form, and its weight on f is

    mu(f, r) = max <m, r>  over monomials m in the support of f.

A subgroup with mu <= 0 shows f is not properly stable. With weights sorted
decreasingly and d > n+1, mu <= 0 forces enough coefficients of f to vanish
that e0 = (1, 0, ..., 0) is a critical point with Hessian kernel of
dimension at least 2; ``verify_vanishing_consequence`` checks this on a
concrete certificate.

Only diagonal subgroups in finitely many coordinate frames are searched, so a
negative search result never certifies proper stability.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linear
from .feasibility import feasible_point
from .poly import Form, act, monomials, permute
from .singularity import SingularityClass, classify, is_singular_at


class InvalidCertificate(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    """Sorted (r0 >= ... >= rn), sum-zero, nonzero integer weights."""

    r: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        problem = weight_problem(r)
        if problem:
            raise ValueError(problem)

    @property
    def n(self) -> int:
        return len(self.r) - 1

    def __iter__(self):
        return iter(self.r)

    def scaled(self, k: int) -> "WeightVector":
        return WeightVector(tuple(k * x for x in self.r))


def weight_problem(r: Sequence[int]) -> str | None:
    """Name the first violated WeightVector invariant, or None."""
    if len(r) < 2:
        return "need at least two weights"
    if any(a < b for a, b in zip(r, r[1:])):
        return "weights must be sorted in decreasing order"
    if sum(r) != 0:
        return "weights must sum to zero"
    if not any(r):
        return "weights must not all be zero"
    return None


def mu(f: Form, r: Sequence[int] | WeightVector) -> int:
    if not f:
        raise ValueError("mu is undefined for the zero form")
    r = tuple(r)
    if len(r) != f.n + 1:
        raise ValueError(f"expected {f.n + 1} weights, got {len(r)}")
    return max(sum(e * w for e, w in zip(m, r)) for m in f.terms)


@dataclass(frozen=True)
class CoordinateSearch:
    """Which coordinate frames to search.

    ``all``: every permutation of the coordinates.
    ``sample``: additionally ``count`` random rational unimodular changes of
    coordinates drawn from ``seed``, each followed by every permutation.
    """

    mode: str = "all"
    count: int = 0
    seed: int | None = None

    def __post_init__(self):
        if self.mode not in ("all", "sample"):
            raise ValueError(f"unknown coordinate search mode {self.mode!r}")
        if self.mode == "sample" and self.seed is None:
            raise ValueError("sampled coordinate search needs a seed")
        if self.count < 0:
            raise ValueError("sample count must be non-negative")

    @classmethod
    def parse(cls, text: str, seed: int | None = None) -> "CoordinateSearch":
        if text == "all":
            return cls("all")
        if text.startswith("sample:"):
            return cls("sample", int(text.split(":", 1)[1]), seed)
        raise ValueError(f"bad coordinate search {text!r}; use all or sample:N")


ALL_PERMUTATIONS = CoordinateSearch("all")


def SAMPLED(count: int, seed: int) -> CoordinateSearch:
    return CoordinateSearch("sample", count, seed)


@dataclass(frozen=True)
class DestabilizerCertificate:
    """mu(frame(f), weight) == mu <= 0.

    The frame first applies ``transform`` (if any) with ``act`` and then
    relabels coordinates so that new z_i is old z_{permutation[i]}.
    """

    permutation: tuple[int, ...]
    weight: WeightVector
    mu: int
    transform: linear.Matrix | None = None

    def frame(self, f: Form) -> Form:
        g = f if self.transform is None else act(self.transform, f)
        return permute(g, self.permutation)

    def to_json(self) -> dict:
        out = {"permutation": list(self.permutation), "weights": list(self.weight.r), "mu": self.mu}
        if self.transform is not None:
            out["transform"] = [[str(x) for x in row] for row in self.transform]
        return out


@dataclass(frozen=True)
class SearchResult:
    certificate: DestabilizerCertificate | None
    searched_frames: int


def _integral(x: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in x:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints)


def sorted_weight_for_support(support: Sequence[Sequence[int]], n: int) -> WeightVector | None:
    """A sorted weight vector with <m, r> <= 0 on the support, if one exists.

    Solves the slice r0 = 1 (admissible vectors always have r0 > 0) over the
    unknowns r1..rn by Fourier-Motzkin elimination.
    """
    nv = n
    rows = []
    one = Fraction(1)

    def row(coeffs, rhs):
        rows.append((tuple(Fraction(c) for c in coeffs), Fraction(rhs)))

    # r1 <= r0 = 1, and r_{i+1} <= r_i
    row([1] + [0] * (nv - 1), one)
    for i in range(1, n):
        c = [0] * nv
        c[i] = 1
        c[i - 1] = -1
        row(c, 0)
    # 1 + r1 + ... + rn == 0
    row([1] * nv, -1)
    row([-1] * nv, 1)
    for m in support:
        row(m[1:], -m[0])
    x = feasible_point(rows, nv)
    if x is None:
        return None
    return WeightVector(_integral((one,) + x))


def random_unimodular(size: int, rng: random.Random) -> linear.Matrix:
    """A random rational matrix of determinant 1 (product of elementary ones)."""
    g = linear.identity(size)
    for _ in range(2 * size):
        i, j = rng.sample(range(size), 2)
        q = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        e = [list(row) for row in linear.identity(size)]
        e[i][j] = q
        g = linear.matmul(g, linear.as_matrix(e))
    return g


def _frames(f: Form, search: CoordinateSearch):
    size = f.n + 1
    if search.mode == "all" or size <= 5:
        perms = list(itertools.permutations(range(size)))
    else:
        prng = random.Random(search.seed)
        perms = [tuple(range(size))]
        for _ in range(search.count):
            p = list(range(size))
            prng.shuffle(p)
            perms.append(tuple(p))
    for p in perms:
        yield None, f, p
    if search.mode == "sample":
        rng = random.Random(search.seed)
        for _ in range(search.count):
            g = random_unimodular(size, rng)
            h = act(g, f)
            for p in perms:
                yield g, h, p


def search_destabilizer(f: Form, search: CoordinateSearch = ALL_PERMUTATIONS) -> SearchResult:
    """First certificate in frame order (identity, permutations, samples)."""
    if not f:
        raise ValueError("the zero form has no destabilizer search")
    count = 0
    for g, h, perm in _frames(f, search):
        count += 1
        support = list(permute(h, perm).terms)
        w = sorted_weight_for_support(support, f.n)
        if w is not None:
            cert = DestabilizerCertificate(tuple(perm), w, mu(permute(h, perm), w), g)
            if cert.mu > 0:
                raise AssertionError("feasible weight with positive mu")
            return SearchResult(cert, count)
    return SearchResult(None, count)


def find_diagonal_destabilizer(f: Form, coordinate_search: CoordinateSearch = ALL_PERMUTATIONS
                               ) -> DestabilizerCertificate | None:
    return search_destabilizer(f, coordinate_search).certificate


def weight_inequality_values(r: Sequence[int], d: int) -> dict[str, list[int]]:
    """The four families of quantities that are positive when d > n+1.

    Computed without checking d, so the boundary case d = n+1 can be
    inspected.
    """
    r = tuple(r)
    n = len(r) - 1
    r0 = r[0]
    return {
        "pure": [d * r0],
        "linear": [(d - 1) * r0 + r[i] for i in range(1, n + 1)],
        "square": [(d - 2) * r0 + 2 * r[i] for i in range(1, n)],
        "mixed": [(d - 2) * r0 + r[i] + r[j] for i in range(1, n + 1) for j in range(i + 1, n + 1)],
    }


def check_weight_inequalities(r: WeightVector | Sequence[int], n: int, d: int) -> bool:
    r = r if isinstance(r, WeightVector) else WeightVector(tuple(r))
    if r.n != n:
        raise ValueError(f"weight vector has {len(r.r)} entries, expected {n + 1}")
    if d <= n + 1:
        raise ValueError(f"need d > n+1 (got n={n}, d={d})")
    return all(v > 0 for vals in weight_inequality_values(r.r, d).values() for v in vals)


def forced_zero_monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """z0^d, z0^(d-1) zi, z0^(d-2) zi^2 (0 < i < n), z0^(d-2) zi zj (0 < i < j)."""
    out = []
    for m in monomials(n, d):
        if m[0] < d - 2:
            continue
        rest = m[1:]
        if m[0] == d - 2 and rest[-1] == 2:
            continue
        out.append(m)
    return out


@dataclass(frozen=True)
class VanishingReport:
    framed_form: Form
    nonzero_listed: tuple[tuple[int, ...], ...]
    critical: bool
    kernel_dim: int | None
    singularity_class: SingularityClass

    @property
    def coefficients_vanish(self) -> bool:
        return not self.nonzero_listed

    @property
    def kernel_ok(self) -> bool:
        return self.critical and self.kernel_dim is not None and self.kernel_dim >= 2

    @property
    def passed(self) -> bool:
        return (self.coefficients_vanish and self.kernel_ok
                and self.singularity_class is SingularityClass.DEGENERATE)

    def to_json(self) -> dict:
        return {
            "coefficients_vanish": self.coefficients_vanish,
            "nonzero_listed": [list(m) for m in self.nonzero_listed],
            "e0_critical": self.critical,
            "kernel_dim": self.kernel_dim,
            "class": self.singularity_class.value,
            "passed": self.passed,
        }


def verify_vanishing_consequence(f: Form, cert: DestabilizerCertificate, **classify_kw) -> VanishingReport:
    """Check that the certificate forces a worse-than-nodal singularity at e0."""
    n, d = f.n, f.d
    if d <= n + 1:
        raise ValueError(f"need d > n+1 (got n={n}, d={d})")
    if cert.weight.n != n:
        raise InvalidCertificate("certificate is for a different number of variables")
    g = cert.frame(f)
    m = mu(g, cert.weight)
    if m > 0:
        raise InvalidCertificate(f"mu recomputes to {m} > 0")
    if m != cert.mu:
        raise InvalidCertificate(f"certificate records mu={cert.mu}, recomputed {m}")
    nonzero = tuple(mm for mm in forced_zero_monomials(n, d) if g.coefficient(mm))
    e0 = (1,) + (0,) * n
    critical, k = is_singular_at(g, e0)
    cls = classify(g, **classify_kw).cls
    return VanishingReport(g, nonzero, critical, k, cls)


def brute_force_weights(f: Form, bound: int) -> tuple[int, ...] | None:
    """Any nonzero integer r, |r_i| <= bound, sum 0, with <m, r> <= 0 on the support.

    Unsorted: searching every coordinate order at once. Test oracle.
    """
    support = list(f.terms)
    for head in itertools.product(range(-bound, bound + 1), repeat=f.n):
        last = -sum(head)
        if abs(last) > bound:
            continue
        r = head + (last,)
        if not any(r):
            continue
        if all(sum(a * b for a, b in zip(m, r)) <= 0 for m in support):
            return r
    return None
