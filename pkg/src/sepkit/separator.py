"""Separators: complementary contractor pairs, their algebra, and projection.

A separator S for a set X is a pair of contractors {inner, outer} such that
for every box [x], inner([x]) ∪ outer([x]) covers [x], the outer contractor
never discards a point of X, and the inner contractor never discards a point
of the complement of X.  A paver can use the pair to classify boxes inside /
outside / boundary.

The existential projection (:func:`sep_exist_project`) is an adaptive
branch-and-contract sweep over a bounded witness domain.  Its soundness rests
on two facts, both direct consequences of contractor consistency:

* outer side (keep every p that has a witness a with (a, p) ∈ Z): for any
  sub-box [a] of the domain, the p-block of S_Z.outer([a] × [p]) contains
  every p ∈ [p] whose witness lies in [a]; hull-accumulating the p-blocks of
  a subdivision that covers the domain therefore loses no projection point.

* inner side (keep every p with no witness at all): for ANY sub-box [a], the
  p-block of S_Z.inner([a] × [p]) contains every witness-free p ∈ [p],
  because all pairs (a, p) with witness-free p belong to the complement of Z
  and survive the inner contractor.  Every node of the sweep therefore
  yields a sound intersection term, at any granularity, and a node whose
  inner contraction is EMPTY certifies a witness for every p ∈ [p] at once.

Subtrees that provably contain no point of Z (outer contraction EMPTY) are
pruned; they can neither certify witnesses nor tighten terms.  The sweep
bisects the raw domain grid (not the contracted boxes) so that nested input
boxes explore aligned trees, which keeps both contractors monotone.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import interval as iv
from .interval import EMPTY, Box, Interval
from .contractor import (
    Contractor, CtcEmpty, CtcIdentity, ConstraintSpec,
    ctc_intersect, ctc_union_hull, fwd_bwd,
)

__all__ = [
    "Separator", "AffineTransform",
    "sep_from_constraint", "sep_intersect", "sep_union", "sep_complement",
    "sep_transform", "sep_cartesian_product", "sep_exist_project",
    "sep_full", "sep_empty",
]


@dataclass(frozen=True)
class Separator:
    """Complementary contractor pair {inner, outer} for a set X.

    outer is consistent with X, inner with the complement of X.
    """

    inner: Contractor
    outer: Contractor

    def __post_init__(self):
        if self.inner.dim != self.outer.dim:
            raise ValueError("inner/outer dimension mismatch")

    @property
    def dim(self) -> int:
        return self.outer.dim


def sep_full(dim: int) -> Separator:
    """Separator for the full space (inner contracts to EMPTY, outer is identity)."""
    return Separator(inner=CtcEmpty(dim), outer=CtcIdentity(dim))


def sep_empty(dim: int) -> Separator:
    """Separator for the empty set."""
    return Separator(inner=CtcIdentity(dim), outer=CtcEmpty(dim))


def sep_from_constraint(spec: ConstraintSpec) -> Separator:
    """Separator for {x | expr(x) ∈ [l, u]}.

    The outer contractor enforces expr(x) ∈ [l, u]; the inner contractor is
    the union-hull combination of the contractors for expr(x) ≤ l and
    expr(x) ≥ u (the closure of the complement).  The expression must be
    total on the boxes of interest (all vocabulary ops except sqrt are).
    """
    rng = spec.rng
    outer = fwd_bwd(spec)
    branches = []
    if rng.lo > -math.inf:
        branches.append(fwd_bwd(ConstraintSpec(
            spec.expr, Interval(-math.inf, rng.lo), spec.dim)))
    if rng.hi < math.inf:
        branches.append(fwd_bwd(ConstraintSpec(
            spec.expr, Interval(rng.hi, math.inf), spec.dim)))
    if not branches:
        inner: Contractor = CtcEmpty(spec.dim)
    elif len(branches) == 1:
        inner = branches[0]
    else:
        inner = ctc_union_hull(branches[0], branches[1])
    return Separator(inner=inner, outer=outer)


def sep_intersect(s1: Separator, s2: Separator, *rest: Separator) -> Separator:
    """Separator for X1 ∩ X2: {inner1 ⊔ inner2, outer1 ∩ outer2}."""
    out = Separator(inner=ctc_union_hull(s1.inner, s2.inner),
                    outer=ctc_intersect(s1.outer, s2.outer))
    for s in rest:
        out = sep_intersect(out, s)
    return out


def sep_union(s1: Separator, s2: Separator, *rest: Separator) -> Separator:
    """Separator for X1 ∪ X2: {inner1 ∩ inner2, outer1 ⊔ outer2}."""
    out = Separator(inner=ctc_intersect(s1.inner, s2.inner),
                    outer=ctc_union_hull(s1.outer, s2.outer))
    for s in rest:
        out = sep_union(out, s)
    return out


def sep_complement(s: Separator) -> Separator:
    """Separator for the complement: the swapped pair."""
    return Separator(inner=s.outer, outer=s.inner)


# ---------------------------------------------------------------------------
# Affine transforms
# ---------------------------------------------------------------------------

class AffineTransform:
    """Invertible affine map x ↦ M x + t with the inverse stored explicitly.

    Intended for compositions of scaling, reflection, rotation and
    translation.  Box images are computed with interval matrix-vector
    products: exact up to rounding for axis-aligned maps, an enclosure for
    rotations.
    """

    def __init__(self, matrix, offset):
        import numpy as np

        m = np.asarray(matrix, dtype=float)
        t = np.asarray(offset, dtype=float)
        n = t.shape[0]
        if m.shape != (n, n):
            raise ValueError("matrix/offset shape mismatch")
        det = float(np.linalg.det(m))
        if det == 0.0 or not math.isfinite(det):
            raise ValueError("transform is singular")
        self.dim = n
        self.matrix = tuple(tuple(float(v) for v in row) for row in m)
        inv = np.linalg.inv(m)
        self.inv_matrix = tuple(tuple(float(v) for v in row) for row in inv)
        self.offset = tuple(float(v) for v in t)
        self._diagonal = all(self.matrix[i][j] == 0.0
                             for i in range(n) for j in range(n) if i != j)

    @classmethod
    def translation(cls, vec) -> "AffineTransform":
        n = len(vec)
        eye = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
        return cls(eye, vec)

    @classmethod
    def scaling(cls, factors) -> "AffineTransform":
        n = len(factors)
        m = [[factors[i] if i == j else 0.0 for j in range(n)] for i in range(n)]
        return cls(m, [0.0] * n)

    @classmethod
    def reflection(cls, dim: int) -> "AffineTransform":
        """Point reflection through the origin (-I)."""
        return cls.scaling([-1.0] * dim)

    @classmethod
    def rotation2d(cls, theta: float) -> "AffineTransform":
        c, s = math.cos(theta), math.sin(theta)
        return cls([[c, -s], [s, c]], [0.0, 0.0])

    @classmethod
    def identity(cls, dim: int) -> "AffineTransform":
        return cls.translation([0.0] * dim)

    @staticmethod
    def _axis_image(mii: float, x: "Interval") -> Interval:
        if mii == 1.0:
            return x
        if mii == -1.0:
            return iv.neg(x)  # reflections stay exact
        return iv.mul(iv._new(mii, mii), x)

    def _matvec(self, matrix, offset, box: Box) -> Box:
        if box.is_empty:
            return box
        comps = []
        if self._diagonal:
            for i in range(self.dim):
                v = self._axis_image(matrix[i][i], box[i])
                o = offset[i]
                if o != 0.0:
                    v = iv.add(v, iv._new(o, o))
                comps.append(v)
            return Box(comps)
        for i in range(self.dim):
            acc = Interval(offset[i], offset[i])
            for j, mij in enumerate(matrix[i]):
                if mij != 0.0:
                    acc = iv.add(acc, iv.mul(Interval(mij, mij), box[j]))
            comps.append(acc)
        return Box(comps)

    def map_box(self, box: Box) -> Box:
        """Enclosure of {M x + t | x ∈ box}."""
        return self._matvec(self.matrix, self.offset, box)

    def inv_map_box(self, box: Box) -> Box:
        """Enclosure of {M^-1 (y - t) | y ∈ box}."""
        if box.is_empty:
            return box
        shifted = Box(iv.sub(box[i], iv._new(self.offset[i], self.offset[i]))
                      for i in range(self.dim))
        return self._matvec(self.inv_matrix, (0.0,) * self.dim, shifted)


class _CtcTransformed(Contractor):
    """Contractor for t^-1(X) = {x | t(x) ∈ X} given a contractor for X."""

    def __init__(self, c: Contractor, t: AffineTransform):
        if c.dim != t.dim:
            raise ValueError("dimension mismatch")
        self.dim = c.dim
        self.c = c
        self.t = t

    def contract(self, box: Box) -> Box:
        self._check(box)
        if box.is_empty:
            return box
        y = self.t.map_box(box)
        y2 = self.c.contract(y)
        if y2.is_empty:
            return Box.empty(self.dim)
        return box.intersect(self.t.inv_map_box(y2))


def sep_transform(s: Separator, t: AffineTransform) -> Separator:
    """Separator for the preimage t^-1(X) = {x | t(x) ∈ X}."""
    if s.dim != t.dim:
        raise ValueError("dimension mismatch")
    return Separator(inner=_CtcTransformed(s.inner, t),
                     outer=_CtcTransformed(s.outer, t))


# ---------------------------------------------------------------------------
# Cartesian product
# ---------------------------------------------------------------------------

class _CtcProductOuter(Contractor):
    def __init__(self, ca: Contractor, cp: Contractor):
        self.dim = ca.dim + cp.dim
        self.ca = ca
        self.cp = cp

    def contract(self, box: Box) -> Box:
        self._check(box)
        if box.is_empty:
            return box
        a, p = box.split_at(self.ca.dim)
        a2 = self.ca.contract(a)
        if a2.is_empty:
            return Box.empty(self.dim)
        p2 = self.cp.contract(p)
        if p2.is_empty:
            return Box.empty(self.dim)
        return a2.concat(p2)


class _CtcProductInner(Contractor):
    """Inner contractor of A × P: union hull of block-wise inner contractions."""

    def __init__(self, ia: Contractor, ip: Contractor):
        self.dim = ia.dim + ip.dim
        self.ia = ia
        self.ip = ip

    def contract(self, box: Box) -> Box:
        self._check(box)
        if box.is_empty:
            return box
        a, p = box.split_at(self.ia.dim)
        r1 = self.ia.contract(a).concat(p)
        r2 = a.concat(self.ip.contract(p))
        return r1.union_hull(r2)


def sep_cartesian_product(s_a: Separator, s_p: Separator) -> Separator:
    """Separator for A × P over the concatenated variable blocks."""
    return Separator(inner=_CtcProductInner(s_a.inner, s_p.inner),
                     outer=_CtcProductOuter(s_a.outer, s_p.outer))


# ---------------------------------------------------------------------------
# Existential projection
# ---------------------------------------------------------------------------

def _check_proj_args(s: Separator, a_domain: Box, eps_a) -> float:
    if not a_domain.is_bounded or a_domain.is_empty:
        raise ValueError("projection requires a bounded, non-empty a-domain")
    if a_domain.dim >= s.dim:
        raise ValueError("a-domain must leave at least one projected dimension")
    if eps_a is None:
        eps_a = a_domain.width() / 64.0
    if eps_a <= 0.0:
        raise ValueError("eps_a must be positive")
    return eps_a


def _effective_eps(eps_a: float, pbox: Box) -> float:
    # deciding a p-box of width W only needs witness leaves commensurate
    # with W: a coarse box the paver will bisect anyway is not worth a
    # full-depth sweep.  Nested inputs get nested (deeper) explorations,
    # which keeps the contractors monotone.
    return max(eps_a, 0.125 * pbox.width())


class _CtcProjOuter(Contractor):
    """Keeps every p of [p] that has a witness a ∈ a_domain with (a,p) ∈ Z."""

    def __init__(self, z: Separator, a_domain: Box, eps_a: float):
        self.z = z
        self.a_domain = a_domain
        self.eps_a = eps_a
        self.dim = z.dim - a_domain.dim

    def contract(self, pbox: Box) -> Box:
        self._check(pbox)
        if pbox.is_empty:
            return pbox
        eps = _effective_eps(self.eps_a, pbox)
        adim = self.a_domain.dim
        acc = Box.empty(self.dim)
        stack = [self.a_domain]
        while stack:
            abox = stack.pop()
            zo = self.z.outer.contract(abox.concat(pbox))
            if zo.is_empty:
                continue  # no Z points here
            za, zp = zo.split_at(adim)
            if acc.encloses(zp):
                continue  # contribution already covered
            if abox.width() <= eps:
                acc = acc.union_hull(zp)
                if acc == pbox:
                    return pbox  # no contraction possible
            else:
                # children keep the raw bisection grid (monotonicity) but
                # subtrees certified free of Z points are skipped
                for child in abox.bisect():
                    if not child.intersect(za).is_empty:
                        stack.append(child)
        return acc


class _CtcProjInner(Contractor):
    """Keeps every p of [p] that has no witness a ∈ a_domain with (a,p) ∈ Z."""

    def __init__(self, z: Separator, a_domain: Box, eps_a: float):
        self.z = z
        self.a_domain = a_domain
        self.eps_a = eps_a
        self.dim = z.dim - a_domain.dim

    def contract(self, pbox: Box) -> Box:
        self._check(pbox)
        if pbox.is_empty:
            return pbox
        eps = _effective_eps(self.eps_a, pbox)
        adim = self.a_domain.dim
        p_cur = pbox
        stack = [self.a_domain]
        while stack:
            abox = stack.pop()
            zo = self.z.outer.contract(abox.concat(p_cur))
            if zo.is_empty:
                continue  # no Z points: subtree cannot certify or tighten
            za = zo.split_at(adim)[0]
            zi = self.z.inner.contract(za.concat(p_cur))
            if zi.is_empty:
                # [za] × [p_cur] lies entirely in Z: every p has a witness
                return Box.empty(self.dim)
            p_cur = zi.split_at(adim)[1]
            if p_cur.is_empty:
                return p_cur
            if abox.width() > eps:
                for child in abox.bisect():
                    if not child.intersect(za).is_empty:
                        stack.append(child)
        return p_cur


def sep_exist_project(s: Separator, a_domain: Box,
                      eps_a: float | None = None) -> Separator:
    """Separator for an enclosure of proj_p(Z) = {p | ∃ a ∈ a_domain, (a,p) ∈ Z}.

    The leading block of s's variables is the witness block a (dimension =
    a_domain.dim); the remaining block is p.  The witness domain must be
    bounded; witnesses outside it are not seen.  eps_a is the bisection
    resolution of the sweep (default: a_domain max width / 64).  Only
    consistency (soundness) is guaranteed, not minimality: leaves undecided
    at eps_a count as surviving for the outer side and as not proving
    membership for the inner side.
    """
    eps_a = _check_proj_args(s, a_domain, eps_a)
    return Separator(inner=_CtcProjInner(s, a_domain, eps_a),
                     outer=_CtcProjOuter(s, a_domain, eps_a))
