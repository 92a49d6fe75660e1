"""SIVIA-style branch-and-contract paver producing classified subpavings.

Each popped box is contracted by both sides of a separator.  The region
removed by the inner contractor is certified inside the set and emitted as
INSIDE; the region removed by the outer contractor is certified outside and
emitted as OUTSIDE (both decomposed into at most 2n axis-aligned boxes so
the output stays a partition of the domain, which makes area accounting
exact).  What remains is bisected at the midpoint of its widest component,
until its width drops below eps, at which point it is emitted as BOUNDARY.

Output boxes are canonically sorted, so the result is byte-identical across
runs, worklist policies and thread counts.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from collections import deque
from dataclasses import dataclass, field

from .interval import Box, parse_box, format_box, parse_interval
from .separator import Separator

__all__ = [
    "INSIDE", "OUTSIDE", "BOUNDARY",
    "PaverConfig", "SubPaving", "pave", "subpaving_stats",
]

INSIDE = "INSIDE"
OUTSIDE = "OUTSIDE"
BOUNDARY = "BOUNDARY"
_CLASSES = (INSIDE, OUTSIDE, BOUNDARY)


@dataclass(frozen=True)
class PaverConfig:
    """Search domain, bisection stop eps, worklist policy and thread count."""

    domain: Box
    eps: float
    policy: str = "lifo"
    threads: int = 1

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        if self.domain.is_empty or not self.domain.is_bounded:
            raise ValueError("paver domain must be non-empty and bounded")
        if self.policy not in ("lifo", "fifo"):
            raise ValueError("policy must be 'lifo' or 'fifo'")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class SubPaving:
    """Classified boxes partitioning a search domain."""

    domain: Box
    eps: float
    boxes: tuple[tuple[Box, str], ...]

    def boxes_of(self, cls: str) -> list[Box]:
        return [b for b, c in self.boxes if c == cls]

    def stats(self) -> dict:
        return subpaving_stats(self)

    # -- file format --------------------------------------------------------
    #
    # header: `dim n eps <eps> domain <itv> <itv> ...`
    # lines:  `lo1 hi1 ... lon hin CLASS`  (shortest-roundtrip floats)

    def dumps(self) -> str:
        lines = [f"dim {self.domain.dim} eps {self.eps!r} "
                 f"domain {format_box(self.domain)}"]
        for box, cls in self.boxes:
            coords = " ".join(f"{i.lo!r} {i.hi!r}" for i in box)
            lines.append(f"{coords} {cls}")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "SubPaving":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "dim" or head[2] != "eps" or head[4] != "domain":
            raise ValueError("bad subpaving header")
        dim = int(head[1])
        eps = float(head[3])
        domain = Box(parse_interval(t) for t in head[5:5 + dim])
        boxes = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2 * dim + 1 or parts[-1] not in _CLASSES:
                raise ValueError(f"bad subpaving line: {ln!r}")
            vals = [float(v) for v in parts[:-1]]
            box = Box.from_bounds([(vals[2 * i], vals[2 * i + 1])
                                   for i in range(dim)])
            boxes.append((box, parts[-1]))
        return cls(domain=domain, eps=eps, boxes=tuple(boxes))

    @classmethod
    def load(cls, path) -> "SubPaving":
        with open(path) as fh:
            return cls.loads(fh.read())


def subpaving_stats(sp: SubPaving) -> dict:
    """Box counts and covered area (volume) per class."""
    counts = {c: 0 for c in _CLASSES}
    areas = {c: 0.0 for c in _CLASSES}
    for box, cls in sp.boxes:
        counts[cls] += 1
        areas[cls] += box.volume()
    return {"counts": counts, "areas": areas}


def _sort_key(entry: tuple[Box, str]):
    box, cls = entry
    flat = tuple(v for i in box for v in (i.lo, i.hi))
    return (flat, cls)


def _process(sep: Separator, box: Box, eps: float):
    """Classify one box; returns (emitted, children)."""
    emitted = []
    x_in = sep.inner.contract(box)
    for piece in box.minus(x_in):
        emitted.append((piece, INSIDE))
    if x_in.is_empty:
        return emitted, []
    x_out = sep.outer.contract(box)
    rem = x_in.intersect(x_out)
    for piece in x_in.minus(rem):
        emitted.append((piece, OUTSIDE))
    if rem.is_empty:
        return emitted, []
    if rem.width() > eps:
        return emitted, list(rem.bisect())
    emitted.append((rem, BOUNDARY))
    return emitted, []


def pave(sep: Separator, cfg: PaverConfig) -> SubPaving:
    """Run the paver; deterministic for a given separator and config."""
    if sep.dim != cfg.domain.dim:
        raise ValueError("separator/domain dimension mismatch")
    out: list[tuple[Box, str]] = []
    work: deque[Box] = deque([cfg.domain])
    pop = work.pop if cfg.policy == "lifo" else work.popleft

    if cfg.threads == 1:
        while work:
            emitted, children = _process(sep, pop(), cfg.eps)
            out.extend(emitted)
            work.extend(children)
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            while work:
                wave = [pop() for _ in range(min(cfg.threads, len(work)))]
                for emitted, children in ex.map(
                        lambda b: _process(sep, b, cfg.eps), wave):
                    out.extend(emitted)
                    work.extend(children)

    out.sort(key=_sort_key)
    return SubPaving(domain=cfg.domain, eps=cfg.eps, boxes=tuple(out))
