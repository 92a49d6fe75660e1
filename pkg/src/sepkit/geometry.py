"""Separator constructors for the concrete shapes used by the toolkit.

All shapes are built from forward-backward constraint separators and the
separator algebra: rings and disks from a squared-distance constraint,
rectangles from per-axis bands, triangles and pies from half-plane
intersections.  Angular constraints are expressed with half-planes through
the origin instead of an interval atan2 (which would need branch-cut
backward projections); this restricts pie half-apertures to gamma < pi/2,
which covers every scenario shipped here.

Strict inequalities in set definitions are implemented as closed
constraints (closures); paving classifications can differ from the open
sets only on the measure-zero boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .interval import Box, Interval
from .contractor import ConstraintSpec, sqr, var
from .raster import OccupancyMap, ctc_raster
from .separator import Separator, sep_from_constraint, sep_intersect, sep_union

__all__ = [
    "PieSpec", "pie_bounding_box",
    "sep_ring", "sep_disk", "sep_rect", "sep_triangle",
    "sep_halfplane", "sep_halfplane_union_map", "sep_pie", "sep_raster_map",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PieSpec:
    """A circular sector: direction alpha, half-aperture gamma, radial range.

    alpha is normalized to (-pi, pi]; 0 < gamma < pi/2; 0 <= r_lo <= r_hi.
    """

    alpha: float
    gamma: float
    r_lo: float
    r_hi: float

    def __post_init__(self):
        a = math.remainder(self.alpha, _TWO_PI)
        if a <= -math.pi:
            a += _TWO_PI
        object.__setattr__(self, "alpha", a)
        if not 0.0 < self.gamma < 0.5 * math.pi:
            raise ValueError("half-aperture gamma must lie in (0, pi/2)")
        if not 0.0 <= self.r_lo <= self.r_hi:
            raise ValueError("need 0 <= r_lo <= r_hi")


def sep_halfplane(normal: tuple[float, float], offset: float) -> Separator:
    """Separator for {x | normal . x <= offset}."""
    a, b = float(normal[0]), float(normal[1])
    if a == 0.0 and b == 0.0:
        raise ValueError("half-plane normal must be nonzero")
    expr = a * var(0) + b * var(1)
    return sep_from_constraint(
        ConstraintSpec(expr, Interval(-math.inf, offset), dim=2))


def sep_ring(center: tuple[float, float], radii: tuple[float, float]) -> Separator:
    """Separator for the annulus {x | |x - center| in [r_lo, r_hi]}."""
    cx, cy = center
    r_lo, r_hi = radii
    if not 0.0 <= r_lo <= r_hi or r_hi <= 0.0:
        raise ValueError("need 0 <= r_lo <= r_hi with r_hi > 0")
    expr = sqr(var(0) - cx) + sqr(var(1) - cy)
    # a disk has no inner radius: keep the range one-sided so the complement
    # does not grow a spurious {expr <= 0} branch pinning the center
    lo = r_lo * r_lo if r_lo > 0.0 else -math.inf
    rng = Interval(lo, r_hi * r_hi)
    return sep_from_constraint(ConstraintSpec(expr, rng, dim=2))


def sep_disk(center: tuple[float, float], radius: float) -> Separator:
    """Separator for the closed disk of the given radius."""
    return sep_ring(center, (0.0, radius))


def sep_rect(center: tuple[float, float],
             half_widths: tuple[float, float]) -> Separator:
    """Separator for the axis-aligned rectangle center +- half_widths."""
    cx, cy = center
    hx, hy = half_widths
    if hx <= 0.0 or hy <= 0.0:
        raise ValueError("rectangle half-widths must be positive")
    band_x = sep_from_constraint(
        ConstraintSpec(var(0), Interval(cx - hx, cx + hx), dim=2))
    band_y = sep_from_constraint(
        ConstraintSpec(var(1), Interval(cy - hy, cy + hy), dim=2))
    return sep_intersect(band_x, band_y)


def sep_triangle(v1, v2, v3) -> Separator:
    """Separator for a triangle: intersection of three inward half-planes."""
    verts = [tuple(map(float, v)) for v in (v1, v2, v3)]
    (x1, y1), (x2, y2), (x3, y3) = verts
    cross = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)
    if cross == 0.0:
        raise ValueError("degenerate triangle (zero area)")
    seps = []
    for (ax, ay), (bx, by), (ox, oy) in (
            (verts[0], verts[1], verts[2]),
            (verts[1], verts[2], verts[0]),
            (verts[2], verts[0], verts[1])):
        # outward normal of edge a->b, flipped if the opposite vertex is outside
        nx, ny = (by - ay), -(bx - ax)
        if nx * (ox - ax) + ny * (oy - ay) > 0.0:
            nx, ny = -nx, -ny
        c = nx * ax + ny * ay
        seps.append(sep_halfplane((nx, ny), c))
    return sep_intersect(*seps)


def sep_halfplane_union_map(x_max: float = 5.0, y_max: float = 3.0) -> Separator:
    """Separator for the open-corridor map {x | x1 <= x_max or x2 <= y_max}."""
    return sep_union(sep_halfplane((1.0, 0.0), x_max),
                     sep_halfplane((0.0, 1.0), y_max))


def sep_pie(spec: PieSpec) -> Separator:
    """Separator for the origin-centered sector described by spec.

    Realized as an annulus constraint intersected with the two half-planes
    whose inward normals bound the cone edges (valid because 2*gamma < pi).
    Agrees with the atan2 formulation away from the boundary.
    """
    annulus = sep_from_constraint(ConstraintSpec(
        sqr(var(0)) + sqr(var(1)),
        Interval(spec.r_lo * spec.r_lo, spec.r_hi * spec.r_hi), dim=2))
    th_lo = spec.alpha - spec.gamma
    th_hi = spec.alpha + spec.gamma
    # n . x >= 0 written as (-n) . x <= 0
    lower = sep_halfplane((math.sin(th_lo), -math.cos(th_lo)), 0.0)
    upper = sep_halfplane((-math.sin(th_hi), math.cos(th_hi)), 0.0)
    return sep_intersect(annulus, lower, upper)


def pie_bounding_box(spec: PieSpec, margin: float = 1e-9) -> Box:
    """Closed-form bounding box of the sector, slightly inflated outward."""
    th_lo = spec.alpha - spec.gamma
    th_hi = spec.alpha + spec.gamma
    angles = [th_lo, th_hi]
    for base in (0.0, 0.5 * math.pi, math.pi, -0.5 * math.pi, -math.pi):
        for shift in (-_TWO_PI, 0.0, _TWO_PI):
            a = base + shift
            if th_lo <= a <= th_hi:
                angles.append(a)
    xs: list[float] = []
    ys: list[float] = []
    for a in angles:
        for r in (spec.r_lo, spec.r_hi):
            xs.append(r * math.cos(a))
            ys.append(r * math.sin(a))
    pad = margin * (1.0 + spec.r_hi)
    return Box([Interval(min(xs) - pad, max(xs) + pad),
                Interval(min(ys) - pad, max(ys) + pad)])


def sep_raster_map(omap: OccupancyMap, outside_is_free: bool = True) -> Separator:
    """Separator for the free region of a raster map.

    The outer contractor keeps free cells (plus everything outside the
    extent under the default policy); the inner contractor keeps obstacle
    cells.
    """
    return Separator(inner=ctc_raster(omap, "obstacle", outside_is_free),
                     outer=ctc_raster(omap, "free", outside_is_free))
