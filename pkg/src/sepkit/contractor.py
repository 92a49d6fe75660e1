"""Contractors: monotone, contracting box operators consistent with a set.

A contractor C maps a box to a sub-box without losing any point of its
associated set X:

    C([x]) ⊆ [x]                        (contractance)
    [x] ⊆ [y]  ⇒  C([x]) ⊆ C([y])       (monotonicity)
    C([x]) ∩ X = [x] ∩ X                (consistency with X)

The main constructor is :func:`fwd_bwd`, a single-sweep forward-backward
constraint propagator over an expression DAG (HC4 revise).  Contractors
compose with :func:`ctc_intersect`, :func:`ctc_union_hull` and
:func:`ctc_compose`.  All contractors are immutable after construction and
safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import interval as iv
from .interval import EMPTY, WHOLE, Box, Interval

__all__ = [
    "Contractor", "CtcIdentity", "CtcEmpty", "CtcFixpoint",
    "ctc_intersect", "ctc_union_hull", "ctc_compose",
    "Expr", "Var", "Const", "var", "const", "sqr", "sqrt",
    "ConstraintSpec", "fwd_bwd",
]


class Contractor:
    """Base class; subclasses implement contract(box) -> box."""

    dim: int

    def contract(self, box: Box) -> Box:
        raise NotImplementedError

    def __call__(self, box: Box) -> Box:
        return self.contract(box)

    def _check(self, box: Box) -> None:
        if box.dim != self.dim:
            raise ValueError(f"dimension mismatch: contractor is {self.dim}-D, "
                             f"box is {box.dim}-D")


class CtcIdentity(Contractor):
    """Contractor consistent with the full space (never contracts)."""

    def __init__(self, dim: int):
        self.dim = dim

    def contract(self, box: Box) -> Box:
        self._check(box)
        return box


class CtcEmpty(Contractor):
    """Contractor consistent with the empty set (contracts everything)."""

    def __init__(self, dim: int):
        self.dim = dim

    def contract(self, box: Box) -> Box:
        self._check(box)
        return Box.empty(self.dim)


class _CtcIntersect(Contractor):
    def __init__(self, c1: Contractor, c2: Contractor):
        if c1.dim != c2.dim:
            raise ValueError("dimension mismatch")
        self.dim = c1.dim
        self.c1 = c1
        self.c2 = c2

    def contract(self, box: Box) -> Box:
        r1 = self.c1.contract(box)
        if r1.is_empty:
            return r1  # intersection with anything stays empty
        return r1.intersect(self.c2.contract(box))


class _CtcUnionHull(Contractor):
    def __init__(self, c1: Contractor, c2: Contractor):
        if c1.dim != c2.dim:
            raise ValueError("dimension mismatch")
        self.dim = c1.dim
        self.c1 = c1
        self.c2 = c2

    def contract(self, box: Box) -> Box:
        r1 = self.c1.contract(box)
        if r1 == box:
            return box  # the hull cannot grow past the input box
        return r1.union_hull(self.c2.contract(box))


class _CtcCompose(Contractor):
    def __init__(self, c1: Contractor, c2: Contractor):
        if c1.dim != c2.dim:
            raise ValueError("dimension mismatch")
        self.dim = c1.dim
        self.c1 = c1
        self.c2 = c2

    def contract(self, box: Box) -> Box:
        return self.c1.contract(self.c2.contract(box))


def ctc_intersect(c1: Contractor, c2: Contractor, *rest: Contractor) -> Contractor:
    """(c1 ∩ c2)([x]) = c1([x]) ∩ c2([x]); consistent with X1 ∩ X2."""
    out: Contractor = _CtcIntersect(c1, c2)
    for c in rest:
        out = _CtcIntersect(out, c)
    return out


def ctc_union_hull(c1: Contractor, c2: Contractor, *rest: Contractor) -> Contractor:
    """(c1 ⊔ c2)([x]) = c1([x]) ⊔ c2([x]); consistent with X1 ∪ X2."""
    out: Contractor = _CtcUnionHull(c1, c2)
    for c in rest:
        out = _CtcUnionHull(out, c)
    return out


def ctc_compose(c1: Contractor, c2: Contractor) -> Contractor:
    """(c1 ∘ c2)([x]) = c1(c2([x]))."""
    return _CtcCompose(c1, c2)


class CtcFixpoint(Contractor):
    """Iterate a contractor until the width reduction per sweep is < tol.

    Optional wrapper: a single sweep suffices for single-occurrence
    expressions, so nothing in the library uses this by default.
    """

    def __init__(self, c: Contractor, tol: float = 1e-10, max_iter: int = 100):
        self.dim = c.dim
        self.c = c
        self.tol = tol
        self.max_iter = max_iter

    def contract(self, box: Box) -> Box:
        cur = box
        for _ in range(self.max_iter):
            nxt = self.c.contract(cur)
            if nxt.is_empty:
                return nxt
            if cur.width() - nxt.width() < self.tol:
                return nxt
            cur = nxt
        return cur


# ---------------------------------------------------------------------------
# Expression DAG
# ---------------------------------------------------------------------------

class Expr:
    """Node of an expression DAG over variables x0..x(n-1).

    Vocabulary: add, sub, neg, mul, sqr, sqrt, and constant scaling.
    Nodes may be shared (a true DAG); the backward sweep intersects the
    contributions of every occurrence.
    """

    def _children(self) -> tuple["Expr", ...]:
        return ()

    # construction sugar
    def __add__(self, other) -> "Expr":
        return Add(self, _wrap(other))

    def __radd__(self, other) -> "Expr":
        return Add(_wrap(other), self)

    def __sub__(self, other) -> "Expr":
        return Sub(self, _wrap(other))

    def __rsub__(self, other) -> "Expr":
        return Sub(_wrap(other), self)

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __mul__(self, other) -> "Expr":
        if isinstance(other, (int, float)):
            return Scale(float(other), self)
        return Mul(self, _wrap(other))

    def __rmul__(self, other) -> "Expr":
        if isinstance(other, (int, float)):
            return Scale(float(other), self)
        return Mul(_wrap(other), self)


def _wrap(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float)):
        return Const(Interval(float(x), float(x)))
    if isinstance(x, Interval):
        return Const(x)
    raise TypeError(f"cannot use {type(x).__name__} in an expression")


class Var(Expr):
    def __init__(self, index: int):
        if index < 0:
            raise ValueError("variable index must be >= 0")
        self.index = index


class Const(Expr):
    def __init__(self, value: Interval):
        if value.is_empty:
            raise ValueError("constant must be non-EMPTY")
        self.value = value


class Add(Expr):
    def __init__(self, l: Expr, r: Expr):
        self.l, self.r = l, r

    def _children(self):
        return (self.l, self.r)


class Sub(Expr):
    def __init__(self, l: Expr, r: Expr):
        self.l, self.r = l, r

    def _children(self):
        return (self.l, self.r)


class Mul(Expr):
    def __init__(self, l: Expr, r: Expr):
        self.l, self.r = l, r

    def _children(self):
        return (self.l, self.r)


class Neg(Expr):
    def __init__(self, c: Expr):
        self.c = c

    def _children(self):
        return (self.c,)


class Sqr(Expr):
    def __init__(self, c: Expr):
        self.c = c

    def _children(self):
        return (self.c,)


class Sqrt(Expr):
    def __init__(self, c: Expr):
        self.c = c

    def _children(self):
        return (self.c,)


class Scale(Expr):
    """Multiplication by a constant coefficient."""

    def __init__(self, k: float, c: Expr):
        self.k = float(k)
        self.c = c

    def _children(self):
        return (self.c,)


def var(i: int) -> Expr:
    return Var(i)


def const(x) -> Expr:
    return _wrap(x)


def sqr(e: Expr) -> Expr:
    return Sqr(_wrap(e))


def sqrt(e: Expr) -> Expr:
    return Sqrt(_wrap(e))


@dataclass(frozen=True)
class ConstraintSpec:
    """The constraint expr(x) ∈ rng over variables x0..x(dim-1)."""

    expr: Expr
    rng: Interval
    dim: int

    def __post_init__(self):
        if self.rng.is_empty:
            raise ValueError("constraint range must be non-EMPTY")
        max_var = _max_var_index(self.expr)
        if max_var >= self.dim:
            raise ValueError(f"expression uses x{max_var} but dim={self.dim}")


def _max_var_index(e: Expr) -> int:
    seen = set()
    best = -1
    stack = [e]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if not isinstance(n, Expr):
            raise TypeError(f"malformed expression: {type(n).__name__} node")
        if isinstance(n, Var):
            best = max(best, n.index)
        stack.extend(n._children())
    return best


def _topo_order(root: Expr) -> list[Expr]:
    """Children-before-parents ordering of the DAG."""
    order: list[Expr] = []
    state: dict[int, int] = {}  # 0 in-progress, 1 done
    stack: list[tuple[Expr, bool]] = [(root, False)]
    while stack:
        node, processed = stack.pop()
        if processed:
            state[id(node)] = 1
            order.append(node)
            continue
        st = state.get(id(node))
        if st == 1:
            continue
        if st == 0:
            raise ValueError("expression graph contains a cycle")
        state[id(node)] = 0
        stack.append((node, True))
        for ch in node._children():
            if state.get(id(ch)) != 1:
                stack.append((ch, False))
    return order


# opcodes for the compiled sweep
_VAR, _CONST, _ADD, _SUB, _MUL, _NEG, _SQR, _SQRT, _SCALE = range(9)

_OPCODE = {Var: _VAR, Const: _CONST, Add: _ADD, Sub: _SUB, Mul: _MUL,
           Neg: _NEG, Sqr: _SQR, Sqrt: _SQRT, Scale: _SCALE}


class _FwdBwdContractor(Contractor):
    """HC4: one forward evaluation sweep, one backward projection sweep.

    The DAG is compiled once into a flat opcode program; apply() runs the
    program forward, clips the root to the range, then projects backward,
    intersecting the contributions of shared nodes.
    """

    def __init__(self, spec: ConstraintSpec):
        self.spec = spec
        self.dim = spec.dim
        order = _topo_order(spec.expr)
        slot = {id(n): k for k, n in enumerate(order)}
        self._root = slot[id(spec.expr)]
        self._n_slots = len(order)
        prog = []
        for k, n in enumerate(order):
            code = _OPCODE[type(n)]
            if code == _VAR:
                prog.append((code, k, n.index, 0, None))
            elif code == _CONST:
                prog.append((code, k, 0, 0, n.value))
            elif code in (_ADD, _SUB, _MUL):
                prog.append((code, k, slot[id(n.l)], slot[id(n.r)], None))
            elif code == _SCALE:
                prog.append((code, k, slot[id(n.c)], 0,
                             Interval(n.k, n.k)))
            else:
                prog.append((code, k, slot[id(n.c)], 0, None))
        self._prog = tuple(prog)
        self._var_slots = tuple(
            (rec[1], rec[2]) for rec in prog if rec[0] == _VAR)

    def contract(self, box: Box) -> Box:
        self._check(box)
        itvs = box.itvs
        if itvs[0].lo > itvs[0].hi:
            return box
        empty = Box.empty(self.dim)
        vals: list[Interval] = [EMPTY] * self._n_slots

        # forward sweep
        for code, k, a, b, aux in self._prog:
            if code == _VAR:
                v = itvs[a]
            elif code == _CONST:
                v = aux
            elif code == _ADD:
                v = iv.add(vals[a], vals[b])
            elif code == _SUB:
                v = iv.sub(vals[a], vals[b])
            elif code == _MUL:
                v = iv.mul(vals[a], vals[b])
            elif code == _NEG:
                v = iv.neg(vals[a])
            elif code == _SQR:
                v = iv.sqr(vals[a])
            elif code == _SQRT:
                v = iv.sqrt(vals[a])
            else:  # _SCALE
                v = iv.mul(aux, vals[a])
            if v.lo > v.hi:
                return empty
            vals[k] = v

        # backward sweep
        down = vals.copy()
        root = iv.intersect(vals[self._root], self.spec.rng)
        if root.lo > root.hi:
            return empty
        down[self._root] = root
        for code, k, a, b, aux in reversed(self._prog):
            if code == _VAR or code == _CONST:
                continue
            out = down[k]
            if code == _ADD:
                x, y = iv.bwd_add(out, down[a], down[b])
                # intersect, not assign: a node may be shared (a == b)
                x = iv.intersect(down[a], x)
                down[a] = x
                y = iv.intersect(down[b], y)
                down[b] = y
            elif code == _SUB:
                x, y = iv.bwd_sub(out, down[a], down[b])
                x = iv.intersect(down[a], x)
                down[a] = x
                y = iv.intersect(down[b], y)
                down[b] = y
            elif code == _MUL:
                x, y = iv.bwd_mul(out, down[a], down[b])
                x = iv.intersect(down[a], x)
                down[a] = x
                y = iv.intersect(down[b], y)
                down[b] = y
            elif code == _NEG:
                x = y = iv.bwd_neg(out, down[a])
                down[a] = x
            elif code == _SQR:
                x = y = iv.bwd_sqr(out, down[a])
                down[a] = x
            elif code == _SQRT:
                x = y = iv.bwd_sqrt(out, down[a])
                down[a] = x
            else:  # _SCALE
                _, x = iv.bwd_mul(out, aux, down[a])
                y = x
                down[a] = x
            if x.lo > x.hi or y.lo > y.hi:
                return empty

        # collect variable domains (occurrences already intersected in-place)
        comps = list(itvs)
        for k, vi in self._var_slots:
            c = iv.intersect(comps[vi], down[k])
            if c.lo > c.hi:
                return empty
            comps[vi] = c
        return Box(comps)


def fwd_bwd(spec: ConstraintSpec) -> Contractor:
    """Contractor consistent with {x | expr(x) ∈ rng}.

    One forward sweep then one backward sweep per apply; no fixpoint
    iteration (wrap with :class:`CtcFixpoint` if wanted).  Minimal for
    expressions in which every variable occurs once.
    """
    return _FwdBwdContractor(spec)
