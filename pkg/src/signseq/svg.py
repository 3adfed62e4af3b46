"""SVG rendering of a signed prefix-sum path in the plane."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Sequence

from .norms import NormSpec, Vector

VIEW = 400.0


def _ball_outline(spec: NormSpec, radius: float, scale: float) -> ET.Element:
    r = radius * scale
    if spec.kind == "euclidean":
        return ET.Element("circle", {"class": "bound", "cx": "0", "cy": "0", "r": f"{r:.6f}",
                                      "fill": "none", "stroke": "#c33"})
    if spec.kind == "l1":
        pts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    elif spec.kind == "linf":
        pts = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
    else:
        pts = spec.vertices
    # svg y grows downwards
    coords = " ".join(f"{x * r:.6f},{-y * r:.6f}" for x, y in pts)
    return ET.Element("polygon", {"class": "bound", "points": coords, "fill": "none", "stroke": "#c33"})


def render_path(vectors: Sequence[Vector], signs: Sequence[int], spec: NormSpec, bound: float | None) -> str:
    """One ``line`` per input vector plus one outline of the bound ball.

    The drawing is scaled so the bound ball just fits the 400-unit viewport.
    """
    points = [(0.0, 0.0)]
    for e, (x, y) in zip(signs, vectors):
        px, py = points[-1]
        points.append((px + e * x, py + e * y))
    radius = bound
    if radius is None or radius <= 0:
        f = spec.evaluator()
        radius = max((f(p) for p in points), default=0.0) or 1.0
    # the ball may poke out of its norm-radius square for skewed polygons
    extent = radius
    if spec.kind == "polygon":
        extent = radius * max(max(abs(x), abs(y)) for x, y in spec.vertices)
    scale = (VIEW / 2) / extent

    half = VIEW / 2
    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"{-half:g} {-half:g} {VIEW:g} {VIEW:g}",
        "width": f"{VIEW:g}",
        "height": f"{VIEW:g}",
    })
    root.append(_ball_outline(spec, radius, scale))
    group = ET.SubElement(root, "g", {"class": "path", "stroke": "#236", "stroke-width": "1"})
    for (x1, y1), (x2, y2) in zip(points, points[1:]):
        ET.SubElement(group, "line", {
            "class": "segment",
            "x1": f"{x1 * scale:.6f}", "y1": f"{-y1 * scale:.6f}",
            "x2": f"{x2 * scale:.6f}", "y2": f"{-y2 * scale:.6f}",
        })
    return ET.tostring(root, encoding="unicode") + "\n"
