"""Textual scenario format: named set expressions plus a command to run.

A scenario is a line-based text file; see docs/scenario.md for the schema.
Set expressions combine shape constructors (disk, ring, rect, tri, pie,
halfplane, map) with the separator algebra (union, inter, compl) under
names that later lines reference.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .interval import Box, Interval, parse_box
from .geometry import (
    PieSpec, sep_disk, sep_halfplane, sep_pie, sep_raster_map, sep_rect,
    sep_ring, sep_triangle,
)
from .localization import load_measurements, localize, simulate_range
from .minkowski import auto_a_domain, sep_minkowski_diff, sep_minkowski_sum
from .paver import BOUNDARY, INSIDE, OUTSIDE, PaverConfig, SubPaving, pave
from .raster import load_map
from .separator import Separator, sep_complement, sep_intersect, sep_union
from .svgplot import write_svg

__all__ = ["Scenario", "ScenarioError", "parse_scenario", "run_scenario",
           "parse_shape", "COMMANDS"]

COMMANDS = ("pave", "minkowski-sum", "minkowski-diff", "sonar-sim", "localize")


class ScenarioError(ValueError):
    """Schema violation, reported with the offending line number."""

    def __init__(self, lineno: int | None, msg: str):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{msg}")


@dataclass
class Scenario:
    command: str
    base_dir: Path
    sets: dict[str, Separator] = field(default_factory=dict)
    domain: Box | None = None
    eps: float | None = None
    eps_a: float | None = None
    a_domain: Box | None = None
    target: str | None = None
    operand_a: str | None = None
    operand_b: str | None = None
    pose: tuple[float, float] | None = None
    alpha: float | None = None
    gamma: float | None = None
    dmax: float | None = None
    measurements: Path | None = None
    out: Path | None = None
    svg: Path | None = None
    expect_nonempty: bool = False
    selftest: int = 0
    threads: int = 1


def _floats(parts: list[str], n: int, lineno: int) -> list[float]:
    if len(parts) != n:
        raise ScenarioError(lineno, f"expected {n} numbers, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise ScenarioError(lineno, str(e)) from None


def parse_shape(kind: str, args: list[str], sets: dict[str, Separator],
                base_dir: Path, lineno: int | None = None) -> Separator:
    """Build one set expression entry of the scenario format."""
    if kind == "disk":
        cx, cy, r = _floats(args, 3, lineno)
        return sep_disk((cx, cy), r)
    if kind == "ring":
        cx, cy, rlo, rhi = _floats(args, 4, lineno)
        return sep_ring((cx, cy), (rlo, rhi))
    if kind == "rect":
        cx, cy, hw, hh = _floats(args, 4, lineno)
        return sep_rect((cx, cy), (hw, hh))
    if kind == "tri":
        v = _floats(args, 6, lineno)
        return sep_triangle((v[0], v[1]), (v[2], v[3]), (v[4], v[5]))
    if kind == "pie":
        alpha, gamma, rlo, rhi = _floats(args, 4, lineno)
        return sep_pie(PieSpec(alpha, gamma, rlo, rhi))
    if kind == "halfplane":
        a, b, c = _floats(args, 3, lineno)
        return sep_halfplane((a, b), c)
    if kind == "map":
        if len(args) not in (1, 4):
            raise ScenarioError(lineno, "map needs: path [x0 y0 resolution]")
        path = base_dir / args[0]
        try:
            if len(args) == 4:
                from .raster import OccupancyMap
                omap = OccupancyMap.from_image(
                    path, origin=(float(args[1]), float(args[2])),
                    resolution=float(args[3]))
            else:
                omap = load_map(path)
        except (OSError, KeyError, ValueError) as e:
            raise ScenarioError(lineno, f"cannot load map {path}: {e}") from None
        return sep_raster_map(omap)
    if kind in ("union", "inter"):
        if len(args) < 2:
            raise ScenarioError(lineno, f"{kind} needs at least two names")
        ops = [_lookup(name, sets, lineno) for name in args]
        return sep_union(*ops) if kind == "union" else sep_intersect(*ops)
    if kind == "compl":
        if len(args) != 1:
            raise ScenarioError(lineno, "compl needs exactly one name")
        return sep_complement(_lookup(args[0], sets, lineno))
    raise ScenarioError(lineno, f"unknown shape kind {kind!r}")


def _lookup(name: str, sets: dict[str, Separator], lineno: int | None) -> Separator:
    if name not in sets:
        raise ScenarioError(lineno, f"undefined set name {name!r}")
    return sets[name]


def _parse_box_or_err(text: str, lineno: int) -> Box:
    try:
        return parse_box(text)
    except ValueError as e:
        raise ScenarioError(lineno, str(e)) from None


def parse_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    base = path.parent
    sc = Scenario(command="", base_dir=base)
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key == "command":
            if len(rest) != 1 or rest[0] not in COMMANDS:
                raise ScenarioError(lineno, f"command must be one of {COMMANDS}")
            sc.command = rest[0]
        elif key == "set":
            if len(rest) < 2:
                raise ScenarioError(lineno, "set needs: NAME KIND args...")
            name, kind, *args = rest
            sc.sets[name] = parse_shape(kind, args, sc.sets, base, lineno)
        elif key == "domain":
            sc.domain = _parse_box_or_err(" ".join(rest), lineno)
        elif key == "a_domain":
            sc.a_domain = _parse_box_or_err(" ".join(rest), lineno)
        elif key in ("eps", "eps_a", "alpha", "gamma", "dmax"):
            (val,) = _floats(rest, 1, lineno)
            setattr(sc, key, val)
        elif key == "pose":
            x, y = _floats(rest, 2, lineno)
            sc.pose = (x, y)
        elif key in ("target", "operand_a", "operand_b"):
            if len(rest) != 1:
                raise ScenarioError(lineno, f"{key} needs one name")
            setattr(sc, key, rest[0])
        elif key == "measurements":
            sc.measurements = base / rest[0]
        elif key in ("out", "svg"):
            setattr(sc, key, base / rest[0])
        elif key == "expect":
            if rest != ["nonempty"]:
                raise ScenarioError(lineno, "only 'expect nonempty' is supported")
            sc.expect_nonempty = True
        elif key == "selftest":
            sc.selftest = int(rest[0])
        else:
            raise ScenarioError(lineno, f"unknown key {key!r}")
    if not sc.command:
        raise ScenarioError(None, "scenario has no command line")
    return sc


def _need(sc: Scenario, attr: str):
    val = getattr(sc, attr)
    if val is None:
        raise ScenarioError(None, f"command {sc.command!r} needs {attr!r}")
    return val


def _sep_of(sc: Scenario, attr: str) -> Separator:
    return _lookup(_need(sc, attr), sc.sets, None)


def _self_check(sep: Separator, domain: Box, n: int, seed: int) -> int:
    """Sample boxes and points; count complementarity covering violations."""
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        los = [rng.uniform(domain[i].lo, domain[i].hi) for i in range(domain.dim)]
        his = [min(lo + rng.uniform(0, 0.25 * domain[i].width()), domain[i].hi)
               for i, lo in enumerate(los)]
        box = Box.from_bounds(list(zip(los, his)))
        bin_ = sep.inner.contract(box)
        bout = sep.outer.contract(box)
        for _ in range(10):
            pt = [rng.uniform(box[i].lo, box[i].hi) for i in range(box.dim)]
            if not (bin_.contains(pt) or bout.contains(pt)):
                bad += 1
    return bad


def run_scenario(sc: Scenario, threads: int | None = None,
                 seed: int = 0) -> int:
    """Execute a parsed scenario; returns the process exit code."""
    t0 = time.perf_counter()
    threads = threads if threads is not None else sc.threads
    paving: SubPaving | None = None

    if sc.command == "pave":
        sep = _sep_of(sc, "target")
        paving = pave(sep, PaverConfig(_need(sc, "domain"), _need(sc, "eps"),
                                       threads=threads))
    elif sc.command in ("minkowski-diff", "minkowski-sum"):
        s_a = _sep_of(sc, "operand_a")
        s_b = _sep_of(sc, "operand_b")
        domain = _need(sc, "domain")
        eps = _need(sc, "eps")
        eps_a = sc.eps_a if sc.eps_a is not None else domain.width() / 64.0
        a_dom = sc.a_domain or auto_a_domain(s_a, domain, eps_a)
        if sc.command == "minkowski-diff":
            sep = sep_minkowski_diff(s_b, s_a, a_dom, eps_a)
        else:
            sep = sep_minkowski_sum(s_a, s_b, a_dom, eps_a)
        paving = pave(sep, PaverConfig(domain, eps, threads=threads))
    elif sc.command == "sonar-sim":
        sep = _sep_of(sc, "target")
        reading = simulate_range(sep, _need(sc, "pose"), _need(sc, "alpha"),
                                 _need(sc, "gamma"), _need(sc, "dmax"),
                                 _need(sc, "eps"), sc.eps_a)
        tag = "  (no echo)" if reading.no_echo else ""
        print(f"range bracket: {reading.interval}{tag}")
    elif sc.command == "localize":
        sep = _sep_of(sc, "target")
        ms = load_measurements(_need(sc, "measurements"))
        est = localize(sep, ms, _need(sc, "domain"), _need(sc, "eps"),
                       sc.eps_a, threads=threads)
        paving = est.paving
    else:  # pragma: no cover - parse_scenario rejects unknown commands
        raise ScenarioError(None, f"unknown command {sc.command!r}")

    code = 0
    if paving is not None:
        st = paving.stats()
        counts, areas = st["counts"], st["areas"]
        for cls in (INSIDE, OUTSIDE, BOUNDARY):
            print(f"{cls:<8} boxes {counts[cls]:>7}   area {areas[cls]:.6g}")
        if sc.out:
            paving.save(sc.out)
            print(f"wrote {sc.out}")
        if sc.svg:
            write_svg(paving, sc.svg)
            print(f"wrote {sc.svg}")
        if sc.expect_nonempty and counts[INSIDE] + counts[BOUNDARY] == 0:
            print("result is empty but the scenario expects a nonempty set")
            code = 1
        if sc.selftest > 0 and sc.domain is not None:
            sep_checked = sep
            bad = _self_check(sep_checked, sc.domain, sc.selftest, seed)
            print(f"selftest: {bad} covering violations over "
                  f"{sc.selftest} boxes")
    print(f"wall time: {time.perf_counter() - t0:.2f} s")
    return code
