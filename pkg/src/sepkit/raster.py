"""Raster occupancy maps with integral-image box queries.

An :class:`OccupancyMap` is a grayscale raster whose thresholded pixels mark
obstacles, placed in the world by an origin (the lower-left corner) and a
resolution in meters per pixel.  Cell (iy, ix) covers the closed world square

    x ∈ [x0 + ix*res, x0 + (ix+1)*res],  y ∈ [y0 + iy*res, y0 + (iy+1)*res]

with iy counting up from the bottom (images are flipped on load).  Integral
images over the obstacle and free masks answer "how many target cells in
this rectangle" in O(1), which the raster contractor turns into minimal
pixel-aligned contractions by binary search on each bound.

The raster is authoritative only inside its extent; by default the world
outside the extent is free space (configurable).
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .interval import Box, Interval
from .contractor import Contractor

__all__ = ["OccupancyMap", "RasterContractor", "ctc_raster", "load_map"]

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


class OccupancyMap:
    """Thresholded raster map with obstacle/free integral images.

    cells[iy, ix] is True for obstacle cells, with iy increasing with
    world y (bottom-up, already flipped from image row order).
    """

    def __init__(self, cells: np.ndarray, origin: tuple[float, float],
                 resolution: float):
        cells = np.asarray(cells, dtype=bool)
        if cells.ndim != 2 or cells.size == 0:
            raise ValueError("cells must be a non-empty 2-D array")
        if resolution <= 0.0:
            raise ValueError("resolution must be positive")
        self.cells = cells
        self.origin = (float(origin[0]), float(origin[1]))
        self.resolution = float(resolution)
        h, w = cells.shape
        self.shape = (h, w)
        obs_int = np.zeros((h + 1, w + 1), dtype=np.int64)
        obs_int[1:, 1:] = cells.astype(np.int64).cumsum(axis=0).cumsum(axis=1)
        free_int = np.zeros((h + 1, w + 1), dtype=np.int64)
        free_int[1:, 1:] = (~cells).astype(np.int64).cumsum(axis=0).cumsum(axis=1)
        # nested lists: scalar lookups beat numpy indexing in the hot path
        self._obs_int = obs_int.tolist()
        self._free_int = free_int.tolist()
        x0, y0 = self.origin
        r = self.resolution
        self._extent = Box([Interval(x0, x0 + w * r), Interval(y0, y0 + h * r)])

    @classmethod
    def from_image(cls, path: str | Path, origin: tuple[float, float],
                   resolution: float, threshold: int = 128) -> "OccupancyMap":
        """Load a PGM (P2/P5) or grayscale PNG; pixel value < threshold is obstacle."""
        from PIL import Image

        with Image.open(path) as im:
            gray = np.asarray(im.convert("L"))
        cells = np.flipud(gray < threshold)  # image row 0 is the top
        return cls(cells, origin, resolution)

    @property
    def extent(self) -> Box:
        return self._extent

    # -- counting ----------------------------------------------------------

    def _count(self, integral: list, iy0: int, iy1: int,
               ix0: int, ix1: int) -> int:
        """Number of set cells with iy in [iy0, iy1], ix in [ix0, ix1]."""
        if iy0 > iy1 or ix0 > ix1:
            return 0
        top = integral[iy1 + 1]
        bot = integral[iy0]
        return top[ix1 + 1] - bot[ix1 + 1] - top[ix0] + bot[ix0]

    def count_obstacle(self, iy0: int, iy1: int, ix0: int, ix1: int) -> int:
        return self._count(self._obs_int, iy0, iy1, ix0, ix1)

    def count_free(self, iy0: int, iy1: int, ix0: int, ix1: int) -> int:
        return self._count(self._free_int, iy0, iy1, ix0, ix1)

    # -- world/cell conversion ----------------------------------------------

    def cell_range(self, itv: Interval, axis: int) -> tuple[int, int]:
        """Inclusive range of cells whose closed span touches itv (may be empty).

        axis 0 is x (columns), axis 1 is y (rows).  Conservative by one ulp.
        """
        o = self.origin[axis]
        n = self.shape[1] if axis == 0 else self.shape[0]
        r = self.resolution
        lo = math.ceil(_down((itv.lo - o) / r)) - 1
        hi = math.floor(_up((itv.hi - o) / r))
        return max(lo, 0), min(hi, n - 1)

    def cells_to_world(self, iy0: int, iy1: int, ix0: int, ix1: int) -> Box:
        """World box covered by an inclusive cell rectangle, one ulp outward."""
        x0, y0 = self.origin
        r = self.resolution
        return Box([
            Interval(_down(x0 + ix0 * r), _up(x0 + (ix1 + 1) * r)),
            Interval(_down(y0 + iy0 * r), _up(y0 + (iy1 + 1) * r)),
        ])

    # -- point queries (world frame) ----------------------------------------

    def obstacle_mask(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Vectorized obstacle test; points outside the extent report False."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        x0, y0 = self.origin
        h, w = self.shape
        ix = np.floor((xs - x0) / self.resolution).astype(np.int64)
        iy = np.floor((ys - y0) / self.resolution).astype(np.int64)
        ok = (ix >= 0) & (ix < w) & (iy >= 0) & (iy < h)
        out = np.zeros(xs.shape, dtype=bool)
        if np.any(ok):
            out[ok] = self.cells[iy[ok], ix[ok]]
        return out

    def is_obstacle(self, x: float, y: float) -> bool:
        return bool(self.obstacle_mask(np.array([x]), np.array([y]))[0])


def load_map(path: str | Path, sidecar: str | Path | None = None) -> OccupancyMap:
    """Load a raster map with its world-frame sidecar config.

    The sidecar (default: the image path with a .json suffix) holds
    {"origin": [x0, y0], "resolution": m_per_px, "threshold": 128}.
    """
    path = Path(path)
    side = Path(sidecar) if sidecar is not None else path.with_suffix(".json")
    cfg = json.loads(side.read_text())
    return OccupancyMap.from_image(
        path, origin=tuple(cfg["origin"]), resolution=float(cfg["resolution"]),
        threshold=int(cfg.get("threshold", 128)))


def _first_true(pred, lo: int, hi: int) -> int:
    """Smallest k in [lo, hi] with pred(k); pred must be monotone."""
    a, b = lo, hi
    while a < b:
        m = (a + b) // 2
        if pred(m):
            b = m
        else:
            a = m + 1
    return a


class RasterContractor(Contractor):
    """Contractor consistent with the covered region of the target cells.

    Each bound is tightened by binary search on the integral image, so the
    result is the smallest cell-aligned box containing every target cell that
    touches the input box (then outward-rounded to world coordinates and
    intersected with the input).  The area outside the raster extent counts
    as free space by default.
    """

    def __init__(self, omap: OccupancyMap, target: str,
                 outside_is_free: bool = True):
        if target not in ("obstacle", "free"):
            raise ValueError("target must be 'obstacle' or 'free'")
        self.dim = 2
        self.omap = omap
        self.target = target
        self.outside_is_free = outside_is_free
        self._count = (omap.count_obstacle if target == "obstacle"
                       else omap.count_free)
        self._outside_is_target = (target == "free") == outside_is_free

    def _shrink(self, iy0: int, iy1: int, ix0: int, ix1: int):
        count = self._count
        ny0 = _first_true(lambda k: count(iy0, k, ix0, ix1) > 0, iy0, iy1)
        ny1 = iy1 - _first_true(
            lambda k: count(iy1 - k, iy1, ix0, ix1) > 0, 0, iy1 - iy0)
        nx0 = _first_true(lambda k: count(ny0, ny1, ix0, k) > 0, ix0, ix1)
        nx1 = ix1 - _first_true(
            lambda k: count(ny0, ny1, ix1 - k, ix1) > 0, 0, ix1 - ix0)
        return ny0, ny1, nx0, nx1

    def contract(self, box: Box) -> Box:
        self._check(box)
        if box.is_empty:
            return box
        omap = self.omap
        inner_box = box.intersect(omap.extent)
        hull = Box.empty(2)
        if self._outside_is_target:
            for piece in box.minus(inner_box):
                hull = hull.union_hull(piece)
        if not inner_box.is_empty:
            ix0, ix1 = omap.cell_range(inner_box[0], axis=0)
            iy0, iy1 = omap.cell_range(inner_box[1], axis=1)
            if ix0 <= ix1 and iy0 <= iy1 and \
                    self._count(iy0, iy1, ix0, ix1) > 0:
                iy0, iy1, ix0, ix1 = self._shrink(iy0, iy1, ix0, ix1)
                world = omap.cells_to_world(iy0, iy1, ix0, ix1)
                hull = hull.union_hull(world.intersect(inner_box))
        return hull


def ctc_raster(omap: OccupancyMap, target: str,
               outside_is_free: bool = True) -> Contractor:
    """Raster-map contractor for the obstacle or free region."""
    return RasterContractor(omap, target, outside_is_free)
