"""SVG drawing of planar diagrams: one shape per cell, colored by its site."""
from __future__ import annotations

import hashlib
from pathlib import Path

from lxml import etree

from civd.civd import CIVD
from civd.geometry import AxisBox
from civd.utils.exceptions import UnsupportedDimensionError

SVG_NS = "http://www.w3.org/2000/svg"
CANVAS = 800.0


def _tag(name: str) -> str:
    return f"{{{SVG_NS}}}{name}"


def site_color(point_ids: list[int]) -> str:
    digest = hashlib.sha1(",".join(map(str, sorted(point_ids))).encode()).hexdigest()
    return f"#{digest[:6]}"


class _Canvas:
    """Maps diagram coordinates onto the canvas, y pointing up."""

    def __init__(self, frame: AxisBox, size: float) -> None:
        self.frame = frame
        self.scale = size / frame.edge_length if frame.edge_length > 0 else 1.0

    def xy(self, x: float, y: float) -> tuple[float, float]:
        return (x - self.frame.lo[0]) * self.scale, (self.frame.hi[1] - y) * self.scale

    def square(self, box: AxisBox) -> str:
        """Closed path around box, as an SVG path fragment."""
        (x0, y0), (x1, y1) = self.xy(box.lo[0], box.lo[1]), self.xy(box.hi[0], box.hi[1])
        return f"M {x0:.3f} {y0:.3f} H {x1:.3f} V {y1:.3f} H {x0:.3f} Z"


def render_svg(civd: CIVD, size: float = CANVAS) -> etree._Element:
    if civd.dim != 2:
        msg = f"Only 2-D diagrams can be rendered, this one is {civd.dim}-D"
        raise UnsupportedDimensionError(msg)
    frame = civd.decomposition.root_box or AxisBox(civd.points[0], 2.0)
    canvas = _Canvas(frame, size)
    root = etree.Element(
        _tag("svg"), nsmap={None: SVG_NS}, width=f"{size:g}", height=f"{size:g}", viewBox=f"0 0 {size:g} {size:g}",
    )
    cells = etree.SubElement(root, _tag("g"), id="cells", stroke="#333333")
    cells.set("stroke-width", "0.5")
    for cell, descriptor in zip(civd.cells, civd.sites, strict=True):
        path = canvas.square(cell.region.outer)
        if cell.region.inner is not None:
            path = f"{path} {canvas.square(cell.region.inner)}"
        shape = etree.SubElement(cells, _tag("path"), d=path, fill=site_color(civd.site_points(descriptor).tolist()))
        shape.set("fill-rule", "evenodd")
        shape.set("data-cell", str(cell.id))
        shape.set("data-kind", str(cell.kind))
    points = etree.SubElement(root, _tag("g"), id="points", fill="black")
    for x, y in civd.points:
        cx, cy = canvas.xy(x, y)
        etree.SubElement(points, _tag("circle"), cx=f"{cx:.3f}", cy=f"{cy:.3f}", r="2")
    return root


def write_svg(civd: CIVD, path: Path, size: float = CANVAS) -> None:
    path.write_bytes(etree.tostring(render_svg(civd, size), pretty_print=True, xml_declaration=True, encoding="utf-8"))
