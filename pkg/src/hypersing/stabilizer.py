"""Stabilizer order bound for nodal forms, plus two brute-force probes.

The probes look at pieces of the stabilizer of f in SL(n+1):

* the trace-zero diagonal directions fixing f (a positive dimension means the
  stabilizer contains a torus and is infinite);
* the monomial matrices (permutation times k-th roots of unity) of
  determinant 1 fixing f, a finite subgroup whose order must divide the
  stabilizer order whenever that is finite.

Roots of unity are handled as exponents in Z/k, never as floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linear
from .poly import Form


def order_bound(n: int, d: int) -> int:
    """prod_{i=2}^{n+1} ((d-1)^(n+1) + (-1)^(i+1) (d-1)^(n+1-i))."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    top = (d - 1) ** (n + 1)
    out = 1
    for i in range(2, n + 2):
        out *= top + (-1) ** (i + 1) * (d - 1) ** (n + 1 - i)
    return out


def infinitesimal_diagonal_stabilizer(f: Form) -> int:
    """dim {r : sum r = 0, <m, r> = 0 for every m in supp f}."""
    if not f:
        raise ValueError("zero form")
    rows = [[1] * (f.n + 1)] + [list(m) for m in f.terms]
    return linear.kernel_dim(rows)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def monomial_stabilizer_count(f: Form, k: int) -> int:
    """Number of g = (z_i -> zeta^a_i z_perm(i)), zeta = exp(2 pi i / k), det g = 1, f o g = f."""
    if not f:
        raise ValueError("zero form")
    if k < 1:
        raise ValueError("root order must be positive")
    size = f.n + 1
    terms = f.terms
    count = 0
    for perm in itertools.permutations(range(size)):
        sign = _perm_sign(perm)
        if sign == -1 and k % 2:
            continue  # -1 is not a k-th root of unity
        # image monomials and coefficient match up to a root of unity
        images = []
        ok = True
        for m, c in terms.items():
            mm = [0] * size
            for i, e in enumerate(m):
                mm[perm[i]] += e
            target = terms.get(tuple(mm))
            if target is None:
                ok = False
                break
            if target == c:
                want = 0
            elif target == -c and k % 2 == 0:
                want = k // 2
            else:
                ok = False
                break
            images.append((m, want))
        if not ok:
            continue
        # det = sign * zeta^(sum a); sign -1 = zeta^(k/2)
        det_target = 0 if sign == 1 else k // 2
        for a in itertools.product(range(k), repeat=size):
            if sum(a) % k != det_target:
                continue
            if all(sum(e * x for e, x in zip(m, a)) % k == want for m, want in images):
                count += 1
    return count


@dataclass(frozen=True)
class StabilizerProbe:
    monomial_count: int
    infinitesimal_dim: int

    @property
    def infinite(self) -> bool:
        return self.infinitesimal_dim > 0


def probe(f: Form, k: int) -> StabilizerProbe:
    return StabilizerProbe(monomial_stabilizer_count(f, k), infinitesimal_diagonal_stabilizer(f))
