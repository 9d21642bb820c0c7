"""Positively 2-spanning vector configurations.

A configuration is positively 2-spanning when every open halfspace
bounded by a linear hyperplane contains at least two of its members.
Equivalently, after deleting any single member the rest is not contained
in a closed halfspace.  For the remaining vectors that is decided exactly
as: they span the ambient space and admit a linear dependence with all
coefficients >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .gale import PointConfig, VectorConfig
from .linalg import RatMatrix, dot, kernel_basis, lp_feasible, rank, rref, vec
from .lattice import lcm


@dataclass(frozen=True)
class FailureWitness:
    """Deleting ``index`` leaves every other vector in ``{x : h.x >= 0}``.

    ``index`` is None only for the empty configuration in positive
    dimension, where nothing can be deleted.
    """

    index: Optional[int]
    h: tuple


@dataclass(frozen=True)
class SpanningVerdict:
    holds: bool
    witness: Optional[FailureWitness] = None
    certificates: tuple = field(default=())

    def __bool__(self):
        return self.holds


def primitive(v: Sequence[Fraction]) -> tuple:
    """Positive multiple of ``v`` with coprime integer entries."""
    v = vec(v)
    den = lcm(x.denominator for x in v)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(x // g) for x in ints)


def _strict_dependence(vectors: Sequence[tuple], dim: int) -> Optional[tuple]:
    """Coefficients ``lam >= 1`` with ``sum lam_i v_i = 0``, or None.

    Solved as ``mu >= 0`` with ``sum mu_i v_i = -sum v_i`` for ``lam = 1 + mu``.
    """
    n = len(vectors)
    if n == 0:
        return () if dim == 0 else None
    rows = [[v[k] for v in vectors] for k in range(dim)]
    rhs = [-sum((v[k] for v in vectors), Fraction(0)) for k in range(dim)]
    res = lp_feasible(eq=(rows, rhs), nvars=n, nonneg=True)
    if not res.feasible:
        return None
    return tuple(1 + mu for mu in res.witness)


def _halfspace_witness(vectors: Sequence[tuple], dim: int) -> tuple:
    """A nonzero ``h`` with ``h.v >= 0`` for all ``v``; exists when the
    vectors do not span or have no strictly positive dependence."""
    mat = RatMatrix(vectors, ncols=dim)
    if rank(mat) < dim:
        return primitive(kernel_basis(mat).row(0))
    total = [sum((v[k] for v in vectors), Fraction(0)) for k in range(dim)]
    res = lp_feasible(ge=(list(vectors) + [total], [0] * len(vectors) + [1]), nvars=dim)
    if not res.feasible:  # excluded by Gordan's alternative
        raise RuntimeError("no separating functional found")
    return primitive(res.witness)


def is_positively_2_spanning(g: VectorConfig) -> SpanningVerdict:
    """Decide the property, with a certificate for each deletion or a witness.

    On success ``certificates[j]`` is a dependence that vanishes at ``j``
    and has every other coefficient >= 1.  On failure the witness names the
    first deleted index (0-based) whose remaining vectors lie in a closed
    halfspace.
    """
    m, n = g.dim, len(g)
    if m == 0:
        return SpanningVerdict(True, certificates=tuple(
            tuple(Fraction(int(i != j)) for i in range(n)) for j in range(n)
        ))
    if n == 0:
        return SpanningVerdict(False, FailureWitness(None, tuple(Fraction(int(k == 0)) for k in range(m))))
    certs = []
    for j in range(n):
        rest = [v for i, v in enumerate(g.vectors) if i != j]
        lam = None
        if rest and rank(RatMatrix(rest, ncols=m)) == m:
            lam = _strict_dependence(rest, m)
        if lam is None:
            return SpanningVerdict(False, FailureWitness(j, _halfspace_witness(rest, m)))
        certs.append(lam[:j] + (Fraction(0),) + lam[j:])
    return SpanningVerdict(True, certificates=tuple(certs))


def check_verdict(g: VectorConfig, verdict: SpanningVerdict) -> bool:
    """Re-substitute a verdict's certificates or witness exactly."""
    if verdict.holds:
        if g.dim == 0:
            return True
        if len(verdict.certificates) != len(g):
            return False
        for j, lam in enumerate(verdict.certificates):
            if lam[j] != 0 or any(x < 1 for i, x in enumerate(lam) if i != j):
                return False
            if any(sum((l * v[k] for l, v in zip(lam, g)), Fraction(0)) for k in range(g.dim)):
                return False
        return True
    w = verdict.witness
    if w is None or not any(w.h):
        return False
    return all(dot(w.h, v) >= 0 for i, v in enumerate(g) if i != w.index)


def positive_dependence_with(g: VectorConfig, k: int) -> Optional[tuple]:
    """Coefficients ``lam >= 0`` with ``lam[k] >= 1`` and ``sum lam_i g_i = 0``.

    Returns None when no such dependence exists.
    """
    n = len(g)
    if not 0 <= k < n:
        raise IndexError("index %d out of range for %d vectors" % (k, n))
    rows = [[v[c] for v in g] for c in range(g.dim)]
    # lam_k = 1 + mu_k
    rhs = [-g[k][c] for c in range(g.dim)]
    res = lp_feasible(eq=(rows, rhs), nvars=n, nonneg=True)
    if not res.feasible:
        return None
    lam = list(res.witness)
    lam[k] += 1
    return tuple(lam)


def scale(g: VectorConfig, factors: Sequence) -> VectorConfig:
    factors = vec(factors)
    if len(factors) != len(g):
        raise ValueError("need one factor per vector")
    for f in factors:
        if f <= 0:
            raise ValueError("scaling factors must be positive, got %s" % f)
    return VectorConfig([tuple(f * x for x in v) for f, v in zip(factors, g)], g.dim)


def project_away(g: VectorConfig, basis) -> VectorConfig:
    """Images of the vectors in ``Q^m / span(basis)``.

    The quotient is coordinatized by the non-pivot coordinates of the RREF
    of ``basis``, after reducing each vector against it.
    """
    basis = basis if isinstance(basis, RatMatrix) else RatMatrix(basis, ncols=g.dim)
    if basis.ncols != g.dim:
        raise ValueError("basis lives in the wrong dimension")
    red, piv = rref(basis)
    if len(piv) != basis.nrows:
        raise ValueError("basis rows are linearly dependent")
    keep = [c for c in range(g.dim) if c not in set(piv)]
    out = []
    for v in g:
        w = list(v)
        for i, p in enumerate(piv):
            f = w[p]
            if f:
                w = [x - f * y for x, y in zip(w, red.row(i))]
        out.append(tuple(w[c] for c in keep))
    return VectorConfig(out, len(keep))


def vertices_of_hull_without_repetition(a: PointConfig) -> bool:
    """Every point is a vertex of ``conv(a)`` and no point is repeated.

    Checked by one LP per point: it must not be a convex combination of
    the other points.
    """
    n, d = len(a), a.dim
    for j in range(n):
        others = [p for i, p in enumerate(a.points) if i != j]
        if not others:
            continue
        rows = [[p[k] for p in others] for k in range(d)] + [[1] * len(others)]
        rhs = list(a[j]) + [1]
        if lp_feasible(eq=(rows, rhs), nvars=len(others), nonneg=True).feasible:
            return False
    return True
