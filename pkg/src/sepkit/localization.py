"""Guaranteed sonar simulation and set-membership pose localization.

Forward problem: the distance returned by a sonar is the shortest distance
to an obstacle inside its emission cone.  Scaling the unit cone S1 by d,
the set D = {d | d·S1 ⊆ M - pose} is downward closed, and its paving
brackets the true distance between the end of the certified-inside region
and the start of the certified-outside region.

Inverse problem: each measurement i carries a free sector S_i (the cone up
to d_i^-, guaranteed obstacle-free) and an impact pie ΔS_i (the cone slice
over [d_i^-, d_i^+] that must touch an obstacle).  The consistent poses are

    P = ⋂_i (M ⊖ S_i) ∩ (M̄ ⊕ -ΔS_i)

and the corresponding separator intersection is paved over the search
domain.  The robot heading is assumed known and already folded into the
beam directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

from .interval import Box, Interval
from .geometry import PieSpec, pie_bounding_box, sep_pie
from .minkowski import (
    SCALING, SetToSetProblem, sep_minkowski_diff, sep_minkowski_sum,
    sep_set_to_set,
)
from .paver import BOUNDARY, INSIDE, PaverConfig, SubPaving, pave
from .separator import (
    AffineTransform, Separator, sep_complement, sep_full, sep_intersect,
    sep_transform,
)

__all__ = [
    "SonarMeasurement", "RangeReading", "PoseEstimate",
    "simulate_range", "build_pose_separator", "localize",
    "load_measurements", "save_measurements",
]


@dataclass(frozen=True)
class SonarMeasurement:
    """One sonar return: beam direction (world frame), half-aperture,
    measured distance interval and the sensor range cap."""

    alpha: float
    gamma: float
    d_range: Interval
    d_max: float
    no_echo: bool = False

    def __post_init__(self):
        if not 0.0 < self.gamma < 0.5 * math.pi:
            raise ValueError("gamma must lie in (0, pi/2)")
        if self.d_range.is_empty or self.d_range.lo < 0.0 \
                or self.d_range.hi > self.d_max:
            raise ValueError("need 0 <= d_range.lo <= d_range.hi <= d_max")


class RangeReading(NamedTuple):
    """Simulated range bracket; no_echo means nothing within sensor range."""

    interval: Interval
    no_echo: bool


@dataclass(frozen=True)
class PoseEstimate:
    """Paved position set, optionally with per-measurement subpavings."""

    paving: SubPaving
    per_measurement: tuple[SubPaving, ...] | None = None


def _shifted_map(map_sep: Separator, pose: Sequence[float]) -> Separator:
    # separator for M - pose = {x | x + pose ∈ M}
    return sep_transform(map_sep, AffineTransform.translation(list(pose)))


def simulate_range(map_sep: Separator, pose: Sequence[float], alpha: float,
                   gamma: float, d_max: float, eps: float,
                   eps_a: float | None = None) -> RangeReading:
    """Guaranteed bracket on the sonar distance at a known pose.

    Paves D = {d ∈ [0, d_max] | d·S1 ⊆ M - pose} at resolution eps and
    returns [lo, hi] where lo ends the certified-free region grown from 0
    and hi adds the undecided slack; the true distance lies in [lo, hi].
    A cone that stays obstacle-free out to d_max yields [d_max, d_max]
    flagged no_echo.
    """
    if d_max <= 0.0:
        raise ValueError("d_max must be positive")
    if map_sep.outer.contract(Box.point(list(pose))).is_empty:
        raise ValueError("pose is certified outside the map free space")
    if eps_a is None:
        eps_a = max(eps / 16.0, 1e-12)

    unit_pie = PieSpec(alpha, gamma, 0.0, 1.0)
    problem = SetToSetProblem(SCALING, sep_pie(unit_pie),
                              _shifted_map(map_sep, pose), p_dim=1)
    s_d = sep_set_to_set(problem, pie_bounding_box(unit_pie), eps_a)
    paving = pave(s_d, PaverConfig(domain=Box([Interval(0.0, d_max)]),
                                   eps=eps))

    lo = 0.0
    for box, cls in paving.boxes:  # sorted by lower bound
        if cls == INSIDE and box[0].lo <= lo:
            lo = max(lo, box[0].hi)
    hi = lo
    for box, cls in paving.boxes:
        if cls in (INSIDE, BOUNDARY) and box[0].lo <= hi:
            hi = max(hi, box[0].hi)
    if lo >= d_max:
        return RangeReading(Interval(d_max, d_max), True)
    return RangeReading(Interval(lo, min(hi, d_max)), False)


def build_pose_separator(map_sep: Separator,
                         measurements: Sequence[SonarMeasurement],
                         eps_a: float | None = None) -> Separator:
    """Separator for ⋂_i (M ⊖ S_i) ∩ (M̄ ⊕ -ΔS_i).

    Per measurement, the free sector S_i spans radii [0, d_i^-] and must fit
    inside the map after translation; the impact pie ΔS_i spans [d_i^-,
    d_i^+] and must touch the map complement.  No-echo measurements
    contribute only the free-sector term with radius d_max.  The projection
    domain of each Minkowski operation is the pie's bounding box.
    """
    terms: list[Separator] = []
    for m in measurements:
        r_free = m.d_max if m.no_echo else m.d_range.lo
        if r_free > 0.0:
            free_pie = PieSpec(m.alpha, m.gamma, 0.0, r_free)
            terms.append(sep_minkowski_diff(
                map_sep, sep_pie(free_pie), pie_bounding_box(free_pie), eps_a))
        else:
            # S_i degenerates to {0} and M ⊖ {0} = M
            terms.append(map_sep)
        if not m.no_echo:
            impact_pie = PieSpec(m.alpha, m.gamma, m.d_range.lo, m.d_range.hi)
            # M̄ ⊕ -ΔS_i = complement(M ⊖ ΔS_i): the impact pie must reach
            # the map complement; building the erosion directly keeps the
            # projection domain bounded (the pie) with no reflection wrappers
            terms.append(sep_complement(sep_minkowski_diff(
                map_sep, sep_pie(impact_pie), pie_bounding_box(impact_pie),
                eps_a)))
    if not terms:
        return sep_full(2)
    return sep_intersect(*terms) if len(terms) > 1 else terms[0]


def localize(map_sep: Separator, measurements: Sequence[SonarMeasurement],
             domain: Box, eps: float, eps_a: float | None = None,
             threads: int = 1, store_partial: bool = False) -> PoseEstimate:
    """Pave the consistent-pose set.

    If the measurements were produced by :func:`simulate_range` at a true
    pose inside the domain, that pose lies in an INSIDE or BOUNDARY box.
    """
    sep = build_pose_separator(map_sep, measurements, eps_a)
    cfg = PaverConfig(domain=domain, eps=eps, threads=threads)
    paving = pave(sep, cfg)
    partial = None
    if store_partial:
        partial = tuple(
            pave(build_pose_separator(map_sep, [m], eps_a), cfg)
            for m in measurements)
    return PoseEstimate(paving=paving, per_measurement=partial)


# -- measurement file format --------------------------------------------------
#
# One line per sonar: `alpha gamma d_lo d_hi d_max` (radians, meters).
# A line with d_lo >= d_max denotes a no-echo measurement.

def load_measurements(path: str | Path) -> list[SonarMeasurement]:
    out = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"bad measurement line: {raw!r}")
        alpha, gamma, d_lo, d_hi, d_max = map(float, parts)
        if d_lo >= d_max:
            out.append(SonarMeasurement(alpha, gamma,
                                        Interval(d_max, d_max), d_max,
                                        no_echo=True))
        else:
            out.append(SonarMeasurement(alpha, gamma, Interval(d_lo, d_hi),
                                        d_max))
    return out


def save_measurements(measurements: Sequence[SonarMeasurement],
                      path: str | Path) -> None:
    lines = []
    for m in measurements:
        d_lo = m.d_max if m.no_echo else m.d_range.lo
        d_hi = m.d_max if m.no_echo else m.d_range.hi
        lines.append(f"{m.alpha!r} {m.gamma!r} {d_lo!r} {d_hi!r} {m.d_max!r}")
    Path(path).write_text("\n".join(lines) + "\n")
