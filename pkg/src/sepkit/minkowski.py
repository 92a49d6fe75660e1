"""Separator-level Minkowski difference and sum via set-to-set transforms.

The parameter set of a set-to-set transform,

    P = {p | f(A, p) ⊆ B},

is the complement of the projection of (A × R^p) ∩ f^-1(B̄) onto p, so a
separator for P is assembled from the separator algebra: cartesian product
with the identity separator, a lift of the complement of B's separator
through f, existential projection over a bounded domain enclosing A, and a
final complement.

With the translation family f(a, p) = a + p this yields the Minkowski
difference (erosion) B ⊖ A = {p | A + p ⊆ B}; the Minkowski sum (dilation)
follows from the duality A ⊕ B = complement(B̄ ⊖ (-A)).  The scaling family
f(a, p) = p·a (scalar p) drives the guaranteed sonar range simulation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import interval as iv
from .interval import Box, Interval
from .contractor import Contractor
from .paver import BOUNDARY, INSIDE, PaverConfig, pave
from .separator import (
    AffineTransform, Separator, sep_cartesian_product, sep_complement,
    sep_exist_project, sep_full, sep_intersect, sep_transform,
)

__all__ = [
    "TRANSLATION", "SCALING", "SetToSetProblem",
    "sep_set_to_set", "sep_minkowski_diff", "sep_minkowski_sum",
    "auto_a_domain",
]

TRANSLATION = "translation"
SCALING = "scaling"


@dataclass(frozen=True)
class SetToSetProblem:
    """The set P = {p | f(A, p) ⊆ B} for a supported transform family.

    translation: f(a, p) = a + p with dim(p) = dim(a);
    scaling:     f(a, p) = p * a with scalar p.
    """

    kind: str
    sep_a: Separator
    sep_b: Separator
    p_dim: int

    def __post_init__(self):
        if self.kind not in (TRANSLATION, SCALING):
            raise ValueError(f"unsupported transform family: {self.kind!r}")
        if self.sep_a.dim != self.sep_b.dim:
            raise ValueError("A and B must share a dimension")
        if self.kind == TRANSLATION and self.p_dim != self.sep_a.dim:
            raise ValueError("translation parameter must match the set dimension")
        if self.kind == SCALING and self.p_dim != 1:
            raise ValueError("scaling parameter must be scalar")


class _CtcLiftTranslation(Contractor):
    """Lift of a y-space contractor through y = a + p onto (a, p)-space."""

    def __init__(self, c: Contractor, n: int):
        self.c = c
        self.n = n
        self.dim = 2 * n

    def contract(self, box: Box) -> Box:
        self._check(box)
        if box.is_empty:
            return box
        n = self.n
        a, p = box.split_at(n)
        y = Box(iv.add(a[i], p[i]) for i in range(n))
        y2 = self.c.contract(y)
        if y2.is_empty:
            return Box.empty(self.dim)
        a2 = Box(iv.intersect(a[i], iv.sub(y2[i], p[i])) for i in range(n))
        if a2.is_empty:
            return Box.empty(self.dim)
        p2 = Box(iv.intersect(p[i], iv.sub(y2[i], a2[i])) for i in range(n))
        if p2.is_empty:
            return Box.empty(self.dim)
        return a2.concat(p2)


class _CtcLiftScaling(Contractor):
    """Lift of a y-space contractor through y = p * a (scalar p)."""

    def __init__(self, c: Contractor, n: int):
        self.c = c
        self.n = n
        self.dim = n + 1

    def contract(self, box: Box) -> Box:
        self._check(box)
        if box.is_empty:
            return box
        n = self.n
        a, pblk = box.split_at(n)
        d = pblk[0]
        y = Box(iv.mul(d, a[i]) for i in range(n))
        y2 = self.c.contract(y)
        if y2.is_empty:
            return Box.empty(self.dim)
        a2 = Box(iv.intersect(a[i], iv.rel_div(y2[i], d)) for i in range(n))
        if a2.is_empty:
            return Box.empty(self.dim)
        d2 = d
        for i in range(n):
            d2 = iv.intersect(d2, iv.rel_div(y2[i], a2[i]))
            if d2.is_empty:
                return Box.empty(self.dim)
        return a2.concat(Box([d2]))


def _lift_separator(s: Separator, kind: str, p_dim: int) -> Separator:
    if kind == TRANSLATION:
        return Separator(inner=_CtcLiftTranslation(s.inner, s.dim),
                         outer=_CtcLiftTranslation(s.outer, s.dim))
    return Separator(inner=_CtcLiftScaling(s.inner, s.dim),
                     outer=_CtcLiftScaling(s.outer, s.dim))


def sep_set_to_set(problem: SetToSetProblem, a_domain: Box,
                   eps_a: float | None = None) -> Separator:
    """Separator for P = {p | f(A, p) ⊆ B}.

    a_domain must be a bounded box enclosing A; witnesses outside it are
    not seen (the obviously-wrong case, A and a_domain certifiably
    disjoint, raises a warning).
    """
    if a_domain.dim != problem.sep_a.dim:
        raise ValueError("a_domain/sep_a dimension mismatch")
    if problem.sep_a.outer.contract(a_domain).is_empty:
        warnings.warn("a_domain contains no point of A; "
                      "it must enclose A for a sound result")
    z = sep_intersect(
        sep_cartesian_product(problem.sep_a, sep_full(problem.p_dim)),
        _lift_separator(sep_complement(problem.sep_b), problem.kind,
                        problem.p_dim),
    )
    return sep_complement(sep_exist_project(z, a_domain, eps_a))


def sep_minkowski_diff(s_b: Separator, s_a: Separator, a_domain: Box,
                       eps_a: float | None = None) -> Separator:
    """Separator for the erosion B ⊖ A = {p | A + p ⊆ B}."""
    problem = SetToSetProblem(TRANSLATION, s_a, s_b, s_a.dim)
    return sep_set_to_set(problem, a_domain, eps_a)


def _reflect_box(b: Box) -> Box:
    return Box(iv.neg(i) for i in b)


def sep_minkowski_sum(s_a: Separator, s_b: Separator, a_domain: Box,
                      eps_a: float | None = None) -> Separator:
    """Separator for the dilation A ⊕ B = {a + b | a ∈ A, b ∈ B}.

    Built as complement(B̄ ⊖ (-A)); a_domain must enclose A (it is
    reflected internally along with A).
    """
    neg_a = sep_transform(s_a, AffineTransform.reflection(s_a.dim))
    diff = sep_minkowski_diff(sep_complement(s_b), neg_a,
                              _reflect_box(a_domain), eps_a)
    return sep_complement(diff)


def auto_a_domain(s_a: Separator, universe: Box, eps_a: float) -> Box:
    """Bounded enclosure of A ∩ universe for use as a projection domain.

    Union hull of a coarse paving of A (eps = 4*eps_a), inflated by one
    eps_a.  A must not extend beyond the universe.
    """
    coarse = pave(s_a, PaverConfig(domain=universe, eps=4.0 * eps_a))
    hull = Box.empty(universe.dim)
    for box, cls in coarse.boxes:
        if cls in (INSIDE, BOUNDARY):
            hull = hull.union_hull(box)
    if hull.is_empty:
        return universe
    return hull.inflate(eps_a).intersect(universe.inflate(eps_a))
