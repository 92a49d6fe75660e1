"""Shared test machinery: random boxes, axiom checkers, sampling oracles."""

from __future__ import annotations

import math

import numpy as np

from sepkit import Box, Interval

# -- random generation --------------------------------------------------------

def random_box(rng: np.random.Generator, domain: Box,
               max_frac: float = 0.5) -> Box:
    """Uniform random sub-box of domain with edges up to max_frac of it."""
    bounds = []
    for itv in domain:
        w = itv.width()
        lo = rng.uniform(itv.lo, itv.hi)
        hi = min(lo + rng.uniform(0.0, max_frac * w), itv.hi)
        bounds.append((lo, hi))
    return Box.from_bounds(bounds)


def nested_pair(rng: np.random.Generator, domain: Box) -> tuple[Box, Box]:
    """A random box and a random sub-box of it."""
    outer = random_box(rng, domain)
    bounds = []
    for itv in outer:
        lo = rng.uniform(itv.lo, itv.hi)
        hi = rng.uniform(lo, itv.hi)
        bounds.append((lo, hi))
    return Box.from_bounds(bounds), outer


def sample_in_box(rng: np.random.Generator, box: Box, n: int) -> np.ndarray:
    """(n, dim) array of uniform points in a non-empty box."""
    cols = [rng.uniform(itv.lo, itv.hi, size=n) for itv in box]
    return np.column_stack(cols)


def points_in_box(points: np.ndarray, box: Box) -> np.ndarray:
    """Vectorized closed-membership mask of (n, dim) points in a box."""
    if box.is_empty:
        return np.zeros(len(points), dtype=bool)
    mask = np.ones(len(points), dtype=bool)
    for k, itv in enumerate(box):
        mask &= (points[:, k] >= itv.lo) & (points[:, k] <= itv.hi)
    return mask


# -- interval comparison ------------------------------------------------------

def assert_itv_close(got: Interval, want: Interval, ulps: int = 4):
    """got must enclose want with slack of a few ulps at want's magnitude."""
    assert not got.is_empty and not want.is_empty
    tol = ulps * math.ulp(max(abs(want.lo), abs(want.hi), 1.0))
    assert got.encloses(want), f"{got} does not enclose {want}"
    assert want.lo - tol <= got.lo and got.hi <= want.hi + tol, \
        f"{got} not within {ulps} ulps of {want}"


def assert_box_close(got: Box, want: Box, ulps: int = 4):
    assert got.dim == want.dim
    for g, w in zip(got, want):
        assert_itv_close(g, w, ulps)


# -- contractor axioms --------------------------------------------------------

def check_contractance(ctc, rng, domain, n_boxes=200):
    for _ in range(n_boxes):
        box = random_box(rng, domain)
        out = ctc.contract(box)
        assert box.encloses(out), f"contractance violated on {box}"


def check_monotonicity(ctc, rng, domain, n_pairs=200):
    for _ in range(n_pairs):
        small, big = nested_pair(rng, domain)
        c_small = ctc.contract(small)
        c_big = ctc.contract(big)
        assert c_big.encloses(c_small), (
            f"monotonicity violated: {small} ⊆ {big} but "
            f"{c_small} ⊄ {c_big}")


def check_consistency(ctc, rng, domain, predicate, n_boxes=100,
                      pts_per_box=100):
    """No sampled point of box ∩ X may be discarded (X given by predicate)."""
    violations = 0
    for _ in range(n_boxes):
        box = random_box(rng, domain)
        pts = sample_in_box(rng, box, pts_per_box)
        keep = predicate(pts)
        if not keep.any():
            continue
        out = ctc.contract(box)
        inside = points_in_box(pts[keep], out)
        violations += int((~inside).sum())
    assert violations == 0, f"{violations} consistency violations"


# -- separator checks ---------------------------------------------------------

def check_complementarity(sep, rng, domain, n_boxes=100, pts_per_box=100):
    """inner([x]) ∪ outer([x]) must cover every sampled point of [x]."""
    violations = 0
    for _ in range(n_boxes):
        box = random_box(rng, domain)
        b_in = sep.inner.contract(box)
        b_out = sep.outer.contract(box)
        pts = sample_in_box(rng, box, pts_per_box)
        covered = points_in_box(pts, b_in) | points_in_box(pts, b_out)
        violations += int((~covered).sum())
    assert violations == 0, f"{violations} complementarity violations"


def check_separator_consistency(sep, rng, domain, predicate, n_boxes=100,
                                pts_per_box=100):
    """outer keeps sampled X points; inner keeps sampled complement points."""
    check_consistency(sep.outer, rng, domain, predicate, n_boxes, pts_per_box)
    check_consistency(sep.inner, rng, domain,
                      lambda pts: ~predicate(pts), n_boxes, pts_per_box)


def classify_point(sep, pt) -> str:
    """IN / OUT / UNDECIDED according to the separator at a point box."""
    box = Box.point(list(pt))
    if sep.outer.contract(box).is_empty:
        return "OUT"
    if sep.inner.contract(box).is_empty:
        return "IN"
    return "UNDECIDED"
