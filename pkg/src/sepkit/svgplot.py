"""SVG rendering of subpavings.

Dark gray boxes are certified inside the set, light gray outside, and the
undecided boundary boxes are white with an outline.  1-D subpavings are
drawn as a horizontal strip.
"""

from __future__ import annotations

from .interval import Box, Interval
from .paver import BOUNDARY, INSIDE, OUTSIDE, SubPaving

__all__ = ["write_svg", "svg_string"]

FILL = {
    INSIDE: "#4d4d4d",
    OUTSIDE: "#d9d9d9",
    BOUNDARY: "#ffffff",
}
EDGE_COLOR = "#999999"
FRAME_COLOR = "#333333"
EDGE_WIDTH_FRAC = 0.0015  # of the drawing width


def _as_2d(sp: SubPaving) -> tuple[Box, list[tuple[Box, str]]]:
    if sp.domain.dim == 2:
        return sp.domain, list(sp.boxes)
    if sp.domain.dim == 1:
        strip = Interval(0.0, max(sp.domain[0].width() * 0.08, sp.eps))
        dom = Box([sp.domain[0], strip])
        return dom, [(Box([b[0], strip]), c) for b, c in sp.boxes]
    raise ValueError("SVG emission supports 1-D and 2-D subpavings only")


def svg_string(sp: SubPaving, px_width: int = 800) -> str:
    domain, boxes = _as_2d(sp)
    wx = domain[0].width()
    wy = domain[1].width()
    scale = px_width / wx
    px_height = wy * scale
    x0 = domain[0].lo
    y1 = domain[1].hi
    stroke = px_width * EDGE_WIDTH_FRAC

    def rect(box: Box, fill: str, outline: bool) -> str:
        x = (box[0].lo - x0) * scale
        y = (y1 - box[1].hi) * scale  # flip y so world +y points up
        w = box[0].width() * scale
        h = box[1].width() * scale
        edge = (f' stroke="{EDGE_COLOR}" stroke-width="{stroke:.3f}"'
                if outline else "")
        return (f'<rect x="{x:.4f}" y="{y:.4f}" width="{w:.4f}" '
                f'height="{h:.4f}" fill="{fill}"{edge}/>')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{px_width}" height="{px_height:.0f}" '
        f'viewBox="0 0 {px_width} {px_height:.4f}">',
    ]
    # draw solid classes first, boundary (with outline) on top
    for cls in (OUTSIDE, INSIDE):
        for box, c in boxes:
            if c == cls:
                parts.append(rect(box, FILL[c], outline=False))
    for box, c in boxes:
        if c == BOUNDARY:
            parts.append(rect(box, FILL[c], outline=True))
    parts.append(
        f'<rect x="0" y="0" width="{px_width}" height="{px_height:.4f}" '
        f'fill="none" stroke="{FRAME_COLOR}" stroke-width="{2 * stroke:.3f}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(sp: SubPaving, path, px_width: int = 800) -> None:
    with open(path, "w") as fh:
        fh.write(svg_string(sp, px_width))
