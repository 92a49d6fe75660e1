import math

import numpy as np
import pytest

from sepkit import (
    Box, Interval, OccupancyMap, PieSpec, pie_bounding_box,
    sep_disk, sep_halfplane, sep_halfplane_union_map, sep_pie,
    sep_raster_map, sep_rect, sep_ring, sep_triangle,
)

from helpers import (
    check_complementarity, check_separator_consistency, classify_point,
    sample_in_box,
)

DOMAIN = Box.from_bounds([(-8, 8), (-8, 8)])


def test_pie_spec_validation_and_normalization():
    spec = PieSpec(alpha=3 * math.pi, gamma=0.2, r_lo=0.0, r_hi=1.0)
    assert abs(spec.alpha - math.pi) < 1e-12
    with pytest.raises(ValueError):
        PieSpec(0.0, math.pi / 2, 0.0, 1.0)
    with pytest.raises(ValueError):
        PieSpec(0.0, 0.2, 2.0, 1.0)


def test_pie_unit_cone_points():
    # S1: alpha = pi/4, gamma = pi/24, r in [0, 1]
    s = sep_pie(PieSpec(math.pi / 4, math.pi / 24, 0.0, 1.0))
    on_axis = 0.5 * math.sqrt(0.5)
    assert classify_point(s, [on_axis, on_axis]) == "IN"
    assert classify_point(s, [1.0, 0.0]) == "OUT"  # angle 0 outside cone
    r12 = 1.2 * math.sqrt(0.5)
    assert classify_point(s, [r12, r12]) == "OUT"  # radius 1.2 on axis


def pie_atan2_pred(spec):
    def pred(pts):
        r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
        ang = np.arctan2(pts[:, 1], pts[:, 0])
        lo = spec.alpha - spec.gamma
        hi = spec.alpha + spec.gamma
        # compare on the circle
        d = np.remainder(ang - lo, 2 * math.pi)
        return (r2 >= spec.r_lo ** 2) & (r2 <= spec.r_hi ** 2) & (d <= hi - lo)
    return pred


@pytest.mark.parametrize("alpha", [0.25 * math.pi, 2.9, -2.5, -0.5 * math.pi])
def test_pie_matches_atan2_predicate(alpha):
    spec = PieSpec(alpha, math.pi / 24, 0.5, 3.0)
    s = sep_pie(spec)
    rng = np.random.default_rng(40)
    check_separator_consistency(s, rng, DOMAIN, pie_atan2_pred(spec), 100, 100)
    check_complementarity(s, rng, DOMAIN, 80, 80)


def test_pie_bounding_box_encloses_samples():
    rng = np.random.default_rng(41)
    for alpha in (0.3, 2.8, -1.2, 3.1):
        spec = PieSpec(alpha, 0.4, 0.5, 2.5)
        bbox = pie_bounding_box(spec)
        th = rng.uniform(spec.alpha - spec.gamma, spec.alpha + spec.gamma, 3000)
        r = rng.uniform(spec.r_lo, spec.r_hi, 3000)
        pts = np.column_stack([r * np.cos(th), r * np.sin(th)])
        for p in pts[:: 50]:
            assert bbox.contains(p)
        assert bbox[0].lo >= -2.5 - 1e-6 and bbox[0].hi <= 2.5 + 1e-6


def test_disk_boundary_point_stays_undecided():
    s = sep_disk((0.0, 0.0), 5.0)
    # (3,4) lies exactly on the boundary; a box around it can never decide
    box = Box.from_bounds([(2.99, 3.01), (3.99, 4.01)])
    assert not s.inner.contract(box).is_empty
    assert not s.outer.contract(box).is_empty
    assert classify_point(s, [0.0, 0.0]) == "IN"
    assert classify_point(s, [5.1, 0.0]) == "OUT"


def test_rect_closed_corner():
    s = sep_rect((0.0, 0.0), (2.0, 1.0))
    # the corner belongs to the closed set: the outer contractor keeps it
    corner = Box.point([2.0, 1.0])
    assert not s.outer.contract(corner).is_empty
    assert classify_point(s, [1.9, 0.9]) == "IN"
    assert classify_point(s, [2.2, 0.0]) == "OUT"

    def pred(pts):
        return (np.abs(pts[:, 0]) <= 2.0) & (np.abs(pts[:, 1]) <= 1.0)

    rng = np.random.default_rng(42)
    check_separator_consistency(s, rng, DOMAIN, pred, 100, 80)
    check_complementarity(s, rng, DOMAIN, 80, 80)


def test_triangle_membership():
    s = sep_triangle((0, 0), (1, 0), (0, 1))
    assert classify_point(s, [1 / 3, 1 / 3]) == "IN"
    assert classify_point(s, [1.0, 1.0]) == "OUT"

    def pred(pts):
        x, y = pts[:, 0], pts[:, 1]
        return (x >= 0) & (y >= 0) & (x + y <= 1)

    rng = np.random.default_rng(43)
    check_separator_consistency(s, rng, DOMAIN, pred, 100, 80)
    with pytest.raises(ValueError):
        sep_triangle((0, 0), (1, 1), (2, 2))


def test_ring_rejects_bad_radii():
    with pytest.raises(ValueError):
        sep_ring((0, 0), (3.0, 1.0))
    with pytest.raises(ValueError):
        sep_rect((0, 0), (0.0, 1.0))
    with pytest.raises(ValueError):
        sep_halfplane((0.0, 0.0), 1.0)


def test_halfplane_union_map_points():
    s = sep_halfplane_union_map()  # x <= 5 or y <= 3
    assert classify_point(s, [0.0, 0.0]) == "IN"
    assert classify_point(s, [6.0, 4.0]) == "OUT"
    assert classify_point(s, [6.0, 2.0]) == "IN"  # second disjunct

    def pred(pts):
        return (pts[:, 0] <= 5.0) | (pts[:, 1] <= 3.0)

    rng = np.random.default_rng(44)
    check_separator_consistency(s, rng, DOMAIN, pred, 100, 80)
    check_complementarity(s, rng, DOMAIN, 80, 80)


def test_raster_map_all_free_behaves_full():
    omap = OccupancyMap(np.zeros((4, 4), dtype=bool), (0, 0), 1.0)
    s = sep_raster_map(omap)
    box = Box.from_bounds([(0.5, 3.5), (0.5, 3.5)])
    assert s.outer.contract(box) == box
    assert s.inner.contract(box).is_empty


def test_raster_map_all_obstacle_with_free_outside():
    omap = OccupancyMap(np.ones((4, 4), dtype=bool), (0, 0), 1.0)
    s = sep_raster_map(omap)
    assert classify_point(s, [2.0, 2.0]) == "OUT"  # inside extent: obstacle
    assert classify_point(s, [9.0, 9.0]) == "IN"   # outside extent: free


def test_raster_checkerboard_vs_pixel_lookup():
    cells = np.indices((8, 8)).sum(axis=0) % 2 == 0
    omap = OccupancyMap(cells, origin=(-2.0, -2.0), resolution=0.5)
    s = sep_raster_map(omap)

    def pred(pts):  # free region
        return ~omap.obstacle_mask(pts[:, 0], pts[:, 1])

    rng = np.random.default_rng(45)
    dom = omap.extent.inflate(0.5)
    check_separator_consistency(s, rng, dom, pred, 100, 100)
    check_complementarity(s, rng, dom, 80, 80)
