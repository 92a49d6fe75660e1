"""Reliable interval and box arithmetic.

Every arithmetic operation returns an *enclosure* of the exact real-set
image: after each inexact floating-point primitive the result endpoints are
stepped one representable float outward (``math.nextafter``).  This is an
enclosure, not the tightest enclosure, but it is portable and does not rely
on switching the FPU rounding mode.

An interval is a closed connected subset of the extended real line; the
distinguished EMPTY value is represented by the canonical sentinel
``(+inf, -inf)``.  EMPTY absorbs: any operation with an EMPTY input yields
EMPTY.  Unbounded endpoints are permitted so that the full line (the
projection universe) is representable, but degenerate points at infinity
are not.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Interval", "Box", "EMPTY", "WHOLE",
    "intersect", "union_hull",
    "add", "sub", "neg", "mul", "sqr", "sqrt", "scale",
    "bwd_add", "bwd_sub", "bwd_neg", "bwd_mul", "bwd_sqr", "bwd_sqrt",
    "bwd_scale", "rel_div",
    "parse_interval", "format_interval", "parse_box", "format_box",
]

_INF = math.inf


def _down(x: float) -> float:
    """Next float toward -inf (identity on -inf)."""
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    """Next float toward +inf (identity on +inf)."""
    return math.nextafter(x, _INF)


class Interval:
    """A closed interval [lo, hi], or the EMPTY sentinel.

    Treat instances as immutable; nothing in the library mutates them.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        lo = float(lo)
        hi = float(hi)
        if not lo <= hi:  # also catches NaN
            if not (lo == _INF and hi == -_INF):  # canonical EMPTY
                raise ValueError(f"invalid interval bounds [{lo}, {hi}]")
        elif lo == _INF or hi == -_INF:
            raise ValueError("degenerate interval at infinity")
        self.lo = lo
        self.hi = hi

    # -- predicates ------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_bounded(self) -> bool:
        return self.is_empty or (self.lo > -_INF and self.hi < _INF)

    def width(self) -> float:
        if self.is_empty:
            return 0.0
        return self.hi - self.lo

    def mid(self) -> float:
        if self.is_empty:
            raise ValueError("mid of EMPTY interval")
        m = 0.5 * self.lo + 0.5 * self.hi
        return min(max(m, self.lo), self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "Interval") -> bool:
        """True if other is a subset of self."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return self.lo <= other.lo and other.hi <= self.hi

    def inflate(self, delta: float) -> "Interval":
        if self.is_empty:
            return self
        return Interval(self.lo - delta, self.hi + delta)

    # -- operators -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        if self.is_empty and other.is_empty:
            return True
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __and__(self, other: "Interval") -> "Interval":
        return intersect(self, other)

    def __or__(self, other: "Interval") -> "Interval":
        return union_hull(self, other)

    def __add__(self, other: "Interval") -> "Interval":
        return add(self, other)

    def __sub__(self, other: "Interval") -> "Interval":
        return sub(self, other)

    def __neg__(self) -> "Interval":
        return neg(self)

    def __mul__(self, other: "Interval") -> "Interval":
        return mul(self, other)

    def __repr__(self) -> str:
        return format_interval(self)


def _new(lo: float, hi: float) -> Interval:
    """Internal fast constructor; caller guarantees a canonical pair."""
    out = Interval.__new__(Interval)
    out.lo = lo
    out.hi = hi
    return out


EMPTY = _new(_INF, -_INF)
WHOLE = _new(-_INF, _INF)


def _mk(lo: float, hi: float) -> Interval:
    """Build an interval, normalizing infeasible bounds to EMPTY."""
    if lo > hi:
        return EMPTY
    return _new(lo, hi)


# -- lattice operations ---------------------------------------------------

def intersect(a: Interval, b: Interval) -> Interval:
    """Largest interval contained in both (exact; EMPTY if disjoint)."""
    lo = a.lo if a.lo >= b.lo else b.lo
    hi = a.hi if a.hi <= b.hi else b.hi
    if lo > hi:
        return EMPTY
    return _new(lo, hi)


def union_hull(a: Interval, b: Interval) -> Interval:
    """Smallest interval containing a ∪ b (exact; identity on EMPTY)."""
    if a.lo > a.hi:
        return b
    if b.lo > b.hi:
        return a
    return _new(a.lo if a.lo <= b.lo else b.lo,
                a.hi if a.hi >= b.hi else b.hi)


# -- forward arithmetic ----------------------------------------------------

def add(a: Interval, b: Interval) -> Interval:
    if a.lo > a.hi or b.lo > b.hi:
        return EMPTY
    return _new(_down(a.lo + b.lo), _up(a.hi + b.hi))


def sub(a: Interval, b: Interval) -> Interval:
    if a.lo > a.hi or b.lo > b.hi:
        return EMPTY
    return _new(_down(a.lo - b.hi), _up(a.hi - b.lo))


def neg(a: Interval) -> Interval:
    if a.lo > a.hi:
        return EMPTY
    return _new(-a.hi, -a.lo)  # exact


def _emul(x: float, y: float) -> float:
    # 0 * inf -> 0 under the closed-set product convention
    if x == 0.0 or y == 0.0:
        return 0.0
    return x * y


def mul(a: Interval, b: Interval) -> Interval:
    if a.lo > a.hi or b.lo > b.hi:
        return EMPTY
    p1 = _emul(a.lo, b.lo)
    p2 = _emul(a.lo, b.hi)
    p3 = _emul(a.hi, b.lo)
    p4 = _emul(a.hi, b.hi)
    lo = min(p1, p2, p3, p4)
    hi = max(p1, p2, p3, p4)
    # a computed zero bound is exact unless an underflown product of the
    # needed sign exists, so only step when the sign analysis demands it
    if lo != 0.0 or (a.hi > 0.0 and b.lo < 0.0) or (a.lo < 0.0 and b.hi > 0.0):
        lo = _down(lo)
    if hi != 0.0 or (a.hi > 0.0 and b.hi > 0.0) or (a.lo < 0.0 and b.lo < 0.0):
        hi = _up(hi)
    return _new(lo, hi)


def scale(d: Interval, x: Interval) -> Interval:
    """The scaling function d*x on intervals (alias of mul)."""
    return mul(d, x)


def sqr(a: Interval) -> Interval:
    if a.lo > a.hi:
        return EMPTY
    p1 = _emul(a.lo, a.lo)
    p2 = _emul(a.hi, a.hi)
    if a.lo <= 0.0 <= a.hi:
        lo = 0.0  # exact: 0 is attained
    else:
        lo = _down(min(p1, p2))
    hi = max(p1, p2)
    if hi != 0.0 or a.lo < 0.0 or a.hi > 0.0:
        hi = _up(hi)
    return _new(lo, hi)


def sqrt(a: Interval) -> Interval:
    if a.hi < 0.0 or a.lo > a.hi:
        return EMPTY
    lo = 0.0 if a.lo <= 0.0 else max(0.0, _down(math.sqrt(a.lo)))
    hi = _up(math.sqrt(a.hi)) if a.hi < _INF else _INF
    return _new(lo, hi)


# -- relational division ---------------------------------------------------

def rel_div(y: Interval, x: Interval) -> Interval:
    """Hull of {q | ∃ b ∈ y, a ∈ x : q * a = b}.

    This is the relational (extended) interval division: when x straddles
    zero the exact solution set is a union of two rays, and the hull of the
    branches is returned.
    """
    if y.lo > y.hi or x.lo > x.hi:
        return EMPTY
    if x.lo == 0.0 and x.hi == 0.0:
        return WHOLE if y.lo <= 0.0 <= y.hi else EMPTY
    if x.hi < 0.0:
        return rel_div(neg(y), neg(x))  # y/x = (-y)/(-x)
    if x.lo > 0.0:
        lo = _down(y.lo / x.hi) if y.lo >= 0.0 else _down(y.lo / x.lo)
        hi = _up(y.hi / x.lo) if y.hi >= 0.0 else _up(y.hi / x.hi)
        return _new(lo, hi)
    # 0 in x (x not degenerate zero)
    if y.lo <= 0.0 <= y.hi:
        return WHOLE
    branches = []
    if y.lo > 0.0:
        if x.hi > 0.0:
            branches.append(_new(_down(y.lo / x.hi), _INF))
        if x.lo < 0.0:
            branches.append(_new(-_INF, _up(y.lo / x.lo)))
    else:  # y.hi < 0
        if x.hi > 0.0:
            branches.append(_new(-_INF, _up(y.hi / x.hi)))
        if x.lo < 0.0:
            branches.append(_new(_down(y.hi / x.lo), _INF))
    out = EMPTY
    for b in branches:
        out = union_hull(out, b)
    return out


# -- backward (inverse) projections ----------------------------------------
#
# Each bwd_* contracts the argument intervals to a superset of the points
# whose forward image lies in `out`, intersected with the input domain.
# Infeasibility yields EMPTY arguments.

def bwd_add(out: Interval, a: Interval, b: Interval) -> tuple[Interval, Interval]:
    a2 = intersect(a, sub(out, b))
    b2 = intersect(b, sub(out, a2))
    if a2.is_empty or b2.is_empty:
        return EMPTY, EMPTY
    return a2, b2


def bwd_sub(out: Interval, a: Interval, b: Interval) -> tuple[Interval, Interval]:
    a2 = intersect(a, add(out, b))
    b2 = intersect(b, sub(a2, out))
    if a2.is_empty or b2.is_empty:
        return EMPTY, EMPTY
    return a2, b2


def bwd_neg(out: Interval, a: Interval) -> Interval:
    return intersect(a, neg(out))


def bwd_mul(out: Interval, a: Interval, b: Interval) -> tuple[Interval, Interval]:
    a2 = intersect(a, rel_div(out, b))
    b2 = intersect(b, rel_div(out, a2))
    if a2.is_empty or b2.is_empty:
        return EMPTY, EMPTY
    return a2, b2


bwd_scale = bwd_mul


def bwd_sqr(out: Interval, a: Interval) -> Interval:
    s = sqrt(out)  # clamps out to [0, inf)
    if s.lo > s.hi:
        return EMPTY
    # two-branch preimage: hull of the branches intersected with the domain
    pos = intersect(a, s)
    negb = intersect(a, neg(s))
    return union_hull(pos, negb)


def bwd_sqrt(out: Interval, a: Interval) -> Interval:
    o = intersect(out, _new(0.0, _INF))
    if o.lo > o.hi:
        return EMPTY
    return intersect(a, sqr(o))


# -- boxes ------------------------------------------------------------------

_EMPTY_ITVS: dict[int, tuple] = {}


def _empty_itvs(dim: int) -> tuple:
    tup = _EMPTY_ITVS.get(dim)
    if tup is None:
        tup = (EMPTY,) * dim
        _EMPTY_ITVS[dim] = tup
    return tup


def _bnew(itvs: tuple) -> "Box":
    """Internal fast constructor; caller guarantees normalized components."""
    out = Box.__new__(Box)
    out.itvs = itvs
    return out


class Box:
    """Cartesian product of n intervals (an axis-aligned box).

    A box is EMPTY iff any component is EMPTY; empty boxes are normalized
    so that every component reports EMPTY.  Treat instances as immutable.
    """

    __slots__ = ("itvs",)

    def __init__(self, itvs: Iterable[Interval]):
        itvs = tuple(itvs)
        if not itvs:
            raise ValueError("box needs at least one dimension")
        for i in itvs:
            if i.lo > i.hi:
                itvs = _empty_itvs(len(itvs))
                break
        self.itvs = itvs

    @classmethod
    def from_bounds(cls, bounds: Sequence[tuple[float, float]]) -> "Box":
        return cls(Interval(lo, hi) for lo, hi in bounds)

    @classmethod
    def empty(cls, dim: int) -> "Box":
        return _bnew(_empty_itvs(dim))

    @classmethod
    def whole(cls, dim: int) -> "Box":
        return cls((WHOLE,) * dim)

    @classmethod
    def point(cls, pt: Sequence[float]) -> "Box":
        return cls(Interval(x, x) for x in pt)

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.itvs)

    @property
    def is_empty(self) -> bool:
        return self.itvs[0].is_empty

    @property
    def is_bounded(self) -> bool:
        return all(i.is_bounded for i in self.itvs)

    def __len__(self) -> int:
        return len(self.itvs)

    def __getitem__(self, i: int) -> Interval:
        return self.itvs[i]

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.itvs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Box):
            return NotImplemented
        return self.itvs == other.itvs

    def __hash__(self) -> int:
        return hash(self.itvs)

    def __repr__(self) -> str:
        return format_box(self)

    def width(self) -> float:
        """Max component width (the paver's box 'length')."""
        if self.is_empty:
            return 0.0
        return max(i.width() for i in self.itvs)

    def widest_axis(self) -> int:
        """Index of the widest component (ties: lowest index)."""
        widths = [i.width() for i in self.itvs]
        return widths.index(max(widths))

    def volume(self) -> float:
        """Product of component widths (length in 1-D, area in 2-D)."""
        if self.is_empty:
            return 0.0
        v = 1.0
        for i in self.itvs:
            v *= i.width()
        return v

    def contains(self, pt: Sequence[float]) -> bool:
        if self.is_empty:
            return False
        return all(i.contains(x) for i, x in zip(self.itvs, pt))

    def encloses(self, other: "Box") -> bool:
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return all(a.encloses(b) for a, b in zip(self.itvs, other.itvs))

    def mid(self) -> tuple[float, ...]:
        return tuple(i.mid() for i in self.itvs)

    def inflate(self, delta: float) -> "Box":
        if self.is_empty:
            return self
        return Box(i.inflate(delta) for i in self.itvs)

    def replace(self, axis: int, itv: Interval) -> "Box":
        itvs = list(self.itvs)
        itvs[axis] = itv
        return Box(itvs)

    def concat(self, other: "Box") -> "Box":
        a = self.itvs
        b = other.itvs
        if a[0].lo > a[0].hi or b[0].lo > b[0].hi:
            return _bnew(_empty_itvs(len(a) + len(b)))
        return _bnew(a + b)

    def split_at(self, k: int) -> tuple["Box", "Box"]:
        """Split the component tuple into (first k dims, rest)."""
        if not 0 < k < len(self.itvs):
            raise ValueError("split index out of range")
        return _bnew(self.itvs[:k]), _bnew(self.itvs[k:])

    # -- set operations ----------------------------------------------------

    def intersect(self, other: "Box") -> "Box":
        a = self.itvs
        b = other.itvs
        if len(a) != len(b):
            self._check_dim(other)
        out = []
        for x, y in zip(a, b):
            lo = x.lo if x.lo >= y.lo else y.lo
            hi = x.hi if x.hi <= y.hi else y.hi
            if lo > hi:
                return _bnew(_empty_itvs(len(a)))
            out.append(_new(lo, hi))
        return _bnew(tuple(out))

    def union_hull(self, other: "Box") -> "Box":
        a = self.itvs
        b = other.itvs
        if len(a) != len(b):
            self._check_dim(other)
        if a[0].lo > a[0].hi:
            return other
        if b[0].lo > b[0].hi:
            return self
        return _bnew(tuple(
            _new(x.lo if x.lo <= y.lo else y.lo,
                 x.hi if x.hi >= y.hi else y.hi)
            for x, y in zip(a, b)))

    __and__ = intersect
    __or__ = union_hull

    def minus(self, inner: "Box") -> list["Box"]:
        """Decompose self minus inner into at most 2n boxes.

        Requires inner ⊆ self (or EMPTY).  The returned boxes together
        with `inner` partition self, sharing only faces.
        """
        if self.is_empty:
            return []
        if inner.is_empty:
            return [self]
        out: list[Box] = []
        cur = list(self.itvs)
        for axis, t in enumerate(inner.itvs):
            c = cur[axis]
            if t.lo > c.lo:
                piece = list(cur)
                piece[axis] = Interval(c.lo, t.lo)
                out.append(Box(piece))
                cur[axis] = Interval(t.lo, c.hi)
            c = cur[axis]
            if t.hi < c.hi:
                piece = list(cur)
                piece[axis] = Interval(t.hi, c.hi)
                out.append(Box(piece))
                cur[axis] = Interval(c.lo, t.hi)
        return out

    def bisect(self) -> tuple["Box", "Box"]:
        """Split at the midpoint of the widest component (ties: lowest index)."""
        if self.is_empty:
            raise ValueError("cannot bisect EMPTY box")
        if self.width() == 0.0:
            raise ValueError("cannot bisect degenerate (zero-width) box")
        axis = self.widest_axis()
        c = self.itvs[axis]
        m = 0.5 * c.lo + 0.5 * c.hi
        if not (c.lo < m < c.hi):
            m = math.nextafter(c.lo, c.hi)
        return (self.replace(axis, Interval(c.lo, m)),
                self.replace(axis, Interval(m, c.hi)))

    def _check_dim(self, other: "Box") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")


# -- textual interval format ------------------------------------------------
#
# "[lo,hi]" with decimal endpoints, "empty", "inf"/"-inf"; used by the CLI
# and fixtures.

def _parse_endpoint(s: str) -> float:
    s = s.strip()
    if s in ("inf", "+inf"):
        return _INF
    if s == "-inf":
        return -_INF
    return float(s)


def parse_interval(text: str) -> Interval:
    t = text.strip()
    if t.lower() == "empty":
        return EMPTY
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError(f"bad interval literal: {text!r}")
    parts = t[1:-1].split(",")
    if len(parts) != 2:
        raise ValueError(f"bad interval literal: {text!r}")
    return Interval(_parse_endpoint(parts[0]), _parse_endpoint(parts[1]))


def _fmt_endpoint(x: float) -> str:
    if x == _INF:
        return "inf"
    if x == -_INF:
        return "-inf"
    return repr(x)


def format_interval(a: Interval) -> str:
    if a.is_empty:
        return "empty"
    return f"[{_fmt_endpoint(a.lo)},{_fmt_endpoint(a.hi)}]"


def parse_box(text: str) -> Box:
    """Parse a whitespace-separated list of interval literals."""
    parts = text.split()
    if not parts:
        raise ValueError("empty box literal")
    return Box(parse_interval(p) for p in parts)


def format_box(b: Box) -> str:
    return " ".join(format_interval(i) for i in b.itvs)
