import math

import numpy as np
import pytest

from sepkit import (
    AffineTransform, Box, ConstraintSpec, Interval,
    sep_cartesian_product, sep_complement, sep_empty, sep_exist_project,
    sep_from_constraint, sep_full, sep_intersect, sep_transform, sep_union,
    INSIDE, OUTSIDE, PaverConfig, pave,
    sqr, var,
)

from helpers import (
    check_complementarity, check_separator_consistency, classify_point,
    random_box, sample_in_box, points_in_box,
)

DOMAIN = Box.from_bounds([(-10, 10), (-10, 10)])


def ring_sep():
    expr = sqr(var(0) - 2.0) + sqr(var(1) - 2.5)
    return sep_from_constraint(ConstraintSpec(expr, Interval(1, 4), dim=2))


def ring_pred(pts):
    d2 = (pts[:, 0] - 2.0) ** 2 + (pts[:, 1] - 2.5) ** 2
    return (d2 >= 1.0) & (d2 <= 4.0)


def halfplane_sep(bound=2.0):
    return sep_from_constraint(
        ConstraintSpec(var(0), Interval(-math.inf, bound), dim=2))


def test_ring_separator_spec_examples():
    s = ring_sep()
    inside_box = Box.from_bounds([(1.8, 2.2), (0.6, 0.8)])
    assert s.inner.contract(inside_box).is_empty
    assert s.outer.contract(inside_box) == inside_box
    outside_box = Box.from_bounds([(5, 6), (5, 6)])
    assert s.outer.contract(outside_box).is_empty
    assert s.inner.contract(outside_box) == outside_box


def test_ring_complementarity_and_consistency():
    s = ring_sep()
    rng = np.random.default_rng(10)
    check_complementarity(s, rng, DOMAIN, 150, 80)
    check_separator_consistency(s, rng, DOMAIN, ring_pred, 100, 80)


def test_intersect_with_full_space_is_identity():
    s = ring_sep()
    both = sep_intersect(s, sep_full(2))
    rng = np.random.default_rng(11)
    for _ in range(60):
        box = random_box(rng, DOMAIN)
        assert both.outer.contract(box) == s.outer.contract(box)
        assert both.inner.contract(box) == s.inner.contract(box)


def test_ring_halfplane_intersection_vs_pointwise_predicate():
    s = sep_intersect(ring_sep(), halfplane_sep(2.0))

    def pred(pts):
        return ring_pred(pts) & (pts[:, 0] <= 2.0)

    rng = np.random.default_rng(12)
    check_separator_consistency(s, rng, DOMAIN, pred, 100, 100)
    check_complementarity(s, rng, DOMAIN, 100, 100)


def test_union_with_complement_covers_plane():
    s = ring_sep()
    u = sep_union(s, sep_complement(s))
    rng = np.random.default_rng(13)
    # X ∪ X̄ = R²: the union's outer contractor may discard nothing
    for _ in range(100):
        box = random_box(rng, DOMAIN)
        out = u.outer.contract(box)
        pts = sample_in_box(rng, box, 50)
        assert points_in_box(pts, out).all()


def test_complement_is_involution():
    s = ring_sep()
    cc = sep_complement(sep_complement(s))
    assert cc.inner is s.inner and cc.outer is s.outer
    c = sep_complement(s)
    rng = np.random.default_rng(14)
    check_separator_consistency(c, rng, DOMAIN, lambda p: ~ring_pred(p), 80, 80)


def test_complement_of_full_space_behaves_empty():
    s = sep_complement(sep_full(2))
    box = Box.from_bounds([(0, 1), (0, 1)])
    assert s.outer.contract(box).is_empty
    assert s.inner.contract(box) == box
    e = sep_empty(2)
    assert e.outer.contract(box).is_empty


def test_transform_identity():
    s = ring_sep()
    t = sep_transform(s, AffineTransform.identity(2))
    rng = np.random.default_rng(15)
    for _ in range(40):
        box = random_box(rng, DOMAIN)
        got = t.outer.contract(box)
        want = s.outer.contract(box)
        assert got.encloses(want)  # identity mapping, up to rounding
        if not want.is_empty:
            assert got.intersect(box).encloses(want)


def test_transform_translation_shifts_ring():
    s = ring_sep()
    p = (3.0, -1.0)
    # t^-1(X) with t(x) = x + p is X - p
    shifted = sep_transform(s, AffineTransform.translation(p))

    def pred(pts):
        return ring_pred(pts + np.array(p))

    rng = np.random.default_rng(16)
    check_separator_consistency(shifted, rng, DOMAIN, pred, 100, 80)
    check_complementarity(shifted, rng, DOMAIN, 80, 80)
    inside_box = Box.from_bounds([(1.8 - 3, 2.2 - 3), (0.6 + 1, 0.8 + 1)])
    assert shifted.inner.contract(inside_box).is_empty


def test_transform_reflection_of_halfplane():
    s = halfplane_sep(2.0)  # x0 <= 2
    r = sep_transform(s, AffineTransform.reflection(2))  # -x0 <= 2

    def pred(pts):
        return pts[:, 0] >= -2.0

    rng = np.random.default_rng(17)
    check_separator_consistency(r, rng, DOMAIN, pred, 100, 80)


def test_transform_round_trip_axis_aligned():
    s = ring_sep()
    t = AffineTransform.scaling([2.0, 0.5])
    t_inv = AffineTransform.scaling([0.5, 2.0])
    rt = sep_transform(sep_transform(s, t), t_inv)
    rng = np.random.default_rng(18)
    for _ in range(50):
        box = random_box(rng, DOMAIN)
        want = s.outer.contract(box)
        got = rt.outer.contract(box)
        if want.is_empty:
            assert got.is_empty
        else:
            for g, w in zip(got, want):
                tol = 32 * math.ulp(max(1.0, abs(w.lo), abs(w.hi)))
                assert abs(g.lo - w.lo) <= tol and abs(g.hi - w.hi) <= tol


def test_transform_rotation_encloses():
    s = ring_sep()
    rot = sep_transform(s, AffineTransform.rotation2d(math.pi / 4))

    def pred(pts):
        c, sn = math.cos(math.pi / 4), math.sin(math.pi / 4)
        rotated = np.column_stack([c * pts[:, 0] - sn * pts[:, 1],
                                   sn * pts[:, 0] + c * pts[:, 1]])
        return ring_pred(rotated)

    rng = np.random.default_rng(19)
    check_separator_consistency(rot, rng, DOMAIN, pred, 80, 80)


def test_singular_transform_rejected():
    with pytest.raises(ValueError):
        AffineTransform([[1.0, 0.0], [2.0, 0.0]], [0.0, 0.0])


def test_cartesian_product_p_block_untouched_for_full_space():
    s = sep_cartesian_product(ring_sep(), sep_full(1))
    box = Box.from_bounds([(-10, 10), (-10, 10), (-3, 7)])
    out = s.outer.contract(box)
    assert out[2] == Interval(-3, 7)


def test_cartesian_product_membership():
    s = sep_cartesian_product(
        ring_sep(),
        sep_from_constraint(ConstraintSpec(var(0), Interval(0, 1), dim=1)))

    def pred(pts):
        return ring_pred(pts[:, :2]) & (pts[:, 2] >= 0) & (pts[:, 2] <= 1)

    dom3 = Box.from_bounds([(-6, 8), (-6, 8), (-2, 3)])
    rng = np.random.default_rng(20)
    check_separator_consistency(s, rng, dom3, pred, 100, 80)
    check_complementarity(s, rng, dom3, 80, 80)


def test_cartesian_product_with_empty_is_empty():
    s = sep_cartesian_product(ring_sep(), sep_empty(1))
    box = Box.from_bounds([(0, 4), (0, 4), (0, 1)])
    assert s.outer.contract(box).is_empty
    assert s.inner.contract(box) == box


# -- existential projection ---------------------------------------------------

def test_project_ring_times_band_onto_p():
    # Z = ring(a) x [0,1](p); projection over a is exactly [0,1]
    z = sep_cartesian_product(
        ring_sep(),
        sep_from_constraint(ConstraintSpec(var(0), Interval(0, 1), dim=1)))
    a_dom = Box.from_bounds([(-0.5, 4.5), (0.0, 5.0)])  # encloses the ring
    proj = sep_exist_project(z, a_dom, eps_a=0.25)
    assert proj.dim == 1
    assert classify_point(proj, [0.5]) == "IN"
    assert classify_point(proj, [1.8]) == "OUT"
    assert classify_point(proj, [-0.7]) == "OUT"
    paving = pave(proj, PaverConfig(Box.from_bounds([(-2, 2)]), eps=0.02))
    for box, cls in paving.boxes:
        mid = box[0].mid()
        if cls == INSIDE:
            assert -1e-9 <= mid <= 1 + 1e-9
        elif cls == OUTSIDE:
            assert mid < 0.05 or mid > 0.95


def test_projection_of_empty_separator_is_empty():
    z = sep_empty(3)
    proj = sep_exist_project(z, Box.from_bounds([(0, 1), (0, 1)]), eps_a=0.5)
    box = Box.from_bounds([(-1, 1)])
    assert proj.outer.contract(box).is_empty
    assert proj.inner.contract(box) == box


def test_projection_rejects_unbounded_domain():
    z = sep_full(3)
    with pytest.raises(ValueError):
        sep_exist_project(z, Box.from_bounds([(0, math.inf), (0, 1)]))
    with pytest.raises(ValueError):
        sep_exist_project(sep_full(2), Box.from_bounds([(0, 1), (0, 1)]))


def test_projection_soundness_with_witness_search():
    # Z = disk of radius 2 centered at (0, p-dependence via band p in [-1,1]):
    # use ring x band again but assert via grid witness search
    z = sep_cartesian_product(
        ring_sep(),
        sep_from_constraint(ConstraintSpec(var(0), Interval(-1, 1), dim=1)))
    a_dom = Box.from_bounds([(-0.5, 4.5), (0.0, 5.0)])
    proj = sep_exist_project(z, a_dom, eps_a=0.25)
    rng = np.random.default_rng(21)
    grid = sample_in_box(rng, a_dom, 4000)
    witnesses_exist = ring_pred(grid).any()
    assert witnesses_exist
    for p in rng.uniform(-1, 1, size=40):
        # witness a exists (grid search): outer must keep p
        box = Box.from_bounds([(p, p)])
        assert not proj.outer.contract(box).is_empty
