"""Smooth / nodal / worse-than-nodal classification of projective hypersurfaces.

At a nonzero critical point p of a form f of degree d, homogeneity gives
Hess(f)(p) . p = (d-1) grad f(p) = 0, so p always lies in the Hessian kernel.
The singularity at p is a node exactly when that kernel is the line through
p, i.e. when the Hessian has rank n. A worse singularity somewhere is
therefore the same as a common nonzero zero of the partial derivatives and
of all n x n minors of the Hessian.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linear
from .ideal import (DEFAULT_MAX_DEGREE, DEFAULT_MAX_PAIRS, GroebnerBasis, Ideal,
                    buchberger, only_origin)
from .poly import Form, act, derivatives, evaluate_matrix, gradient, poly_det


class SingularityClass(str, enum.Enum):
    SMOOTH = "SMOOTH"
    NODAL = "NODAL"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class PointCertificate:
    point: tuple[Fraction, ...]
    critical: bool
    kernel_dim: int | None

    def to_json(self) -> dict:
        return {"point": [str(x) for x in self.point], "critical": self.critical,
                "kernel_dim": self.kernel_dim}


@dataclass(frozen=True)
class SingularityReport:
    cls: SingularityClass
    jacobian_gb: GroebnerBasis
    nonnode_gb: GroebnerBasis | None = None
    point_certificates: tuple[PointCertificate, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "class": self.cls.value,
            "jacobian_gb": self.jacobian_gb.dump(),
            "nonnode_gb": self.nonnode_gb.dump() if self.nonnode_gb is not None else [],
        }


def _require_nonzero(f: Form) -> None:
    if not f:
        raise ValueError("the zero form is not classified")


def hessian_minors(f: Form) -> list[Form]:
    """All (n+1)^2 minors of size n of the Hessian, zero ones dropped."""
    _, hess = derivatives(f)
    size = f.n + 1
    out = []
    for i in range(size):
        for j in range(size):
            sub = [[hess[r][c] for c in range(size) if c != j] for r in range(size) if r != i]
            m = poly_det(sub)
            if m:
                out.append(m)
    return out


def singular_ideals(f: Form) -> tuple[Ideal, Ideal]:
    """The Jacobian ideal and the Jacobian ideal plus the Hessian n x n minors."""
    _require_nonzero(f)
    jac = [g for g in gradient(f) if g]
    nonnode = jac + hessian_minors(f)
    return Ideal(f.n, tuple(jac)), Ideal(f.n, tuple(nonnode))


def classify(f: Form, max_pairs: int = DEFAULT_MAX_PAIRS,
             max_degree: int = DEFAULT_MAX_DEGREE,
             timeout: float | None = None) -> SingularityReport:
    _require_nonzero(f)
    jac, nonnode = singular_ideals(f)
    kw = dict(max_pairs=max_pairs, max_degree=max_degree, timeout=timeout)
    jgb = buchberger(jac, **kw)
    if only_origin(jgb):
        return SingularityReport(SingularityClass.SMOOTH, jgb)
    ngb = buchberger(nonnode, **kw)
    if only_origin(ngb):
        return SingularityReport(SingularityClass.NODAL, jgb, ngb)
    return SingularityReport(SingularityClass.DEGENERATE, jgb, ngb)


def is_singular_at(f: Form, p: Sequence) -> tuple[bool, int | None]:
    """(critical, kernel dimension of the Hessian) at the nonzero point p."""
    p = tuple(Fraction(x) for x in p)
    if len(p) != f.n + 1:
        raise ValueError(f"point has {len(p)} coordinates, expected {f.n + 1}")
    if not any(p):
        raise ValueError("the origin is not a point of projective space")
    grad, hess = derivatives(f)
    if any(g.evaluate(p) for g in grad):
        return False, None
    return True, linear.kernel_dim(evaluate_matrix(hess, p))


def point_certificate(f: Form, p: Sequence) -> PointCertificate:
    critical, k = is_singular_at(f, p)
    return PointCertificate(tuple(Fraction(x) for x in p), critical, k)


def frame_sending_e0_to(p: Sequence) -> linear.Matrix:
    """An invertible rational matrix M with M e0 = p (first column p)."""
    p = [Fraction(x) for x in p]
    size = len(p)
    pivot = next(i for i, x in enumerate(p) if x)
    cols = [p] + [[Fraction(int(i == j)) for i in range(size)] for j in range(size) if j != pivot]
    return tuple(tuple(col[r] for col in cols) for r in range(size))


def degenerate_witness(n: int, d: int, p: Sequence | None = None) -> Form:
    """A form of degree d that is critical at p with Hessian kernel of dim >= 2.

    Built from z0^(d-2) zn^2, which has that property at e0, pulled back along
    a coordinate change taking p to e0.
    """
    if n < 2:
        raise ValueError("witness construction needs n >= 2")
    if d < 2:
        raise ValueError("witness construction needs d >= 2")
    exp = [0] * (n + 1)
    exp[0] += d - 2
    exp[n] += 2
    base = Form.monomial(exp)
    if p is None:
        return base
    p = [Fraction(x) for x in p]
    if len(p) != n + 1 or not any(p):
        raise ValueError("p must be a nonzero point with n+1 coordinates")
    frame = frame_sending_e0_to(p)
    # act(g, f)(z) = f(g z): with g = frame^-1, g p = e0
    return act(linear.inverse(frame), base)
