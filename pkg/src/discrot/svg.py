"""SVG pictures of the ball, the trap band and the lattice around them."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np

from .dynamics import RotationParams
from .geometry import TrapSpec, ball_states, embed_real_many, trap_states

SVG_NS = "http://www.w3.org/2000/svg"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def trap_svg(
    radius_sq,
    p: RotationParams,
    width: int = 640,
    height: int = 640,
    orbit=None,
    samples: int = 720,
) -> str:
    """Render ``B(R)``, the trap band, lattice points and the swap axis.

    Trap points are drawn as ``<circle class="trap">``, one per point.
    ``orbit`` optionally overlays a list of states as a polyline.
    """
    trap = TrapSpec(Fraction(radius_sq), shifted=p.has_shift)
    r = trap.radius
    sin_t = math.sin(p.theta_float)
    e2 = np.array([-float(p.lam) / 2 / sin_t, 1.0])
    reach = r + 1 / sin_t + 1
    scale = (min(width, height) / 2 - 10) / reach

    def to_px(pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.column_stack([width / 2 + scale * pts[:, 0], height / 2 - scale * pts[:, 1]])

    root = ET.Element(
        "svg",
        xmlns=SVG_NS,
        version="1.1",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    ET.SubElement(root, "title").text = (
        f"trap region, lambda={p.lam.to_text()}, eta={p.eta.to_text()}, R^2={trap.radius_sq}"
    )
    ET.SubElement(root, "rect", width=str(width), height=str(height), fill="white")

    # B(R) + [0, 1) e2: each boundary direction picks up e2 when it faces it
    alpha = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    dirs = np.column_stack([np.cos(alpha), np.sin(alpha)])
    band = r * dirs + np.outer(dirs @ e2 > 0, e2)
    ET.SubElement(
        root,
        "polygon",
        {"class": "band", "fill": "#fde8c8", "stroke": "#e0a040", "stroke-width": "1"},
        points=" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in to_px(band)),
    )
    cx, cy = to_px(np.zeros(2))[0]
    ET.SubElement(
        root,
        "circle",
        {"class": "ball", "fill": "white", "stroke": "#3060c0", "stroke-width": "1.5"},
        cx=_fmt(cx),
        cy=_fmt(cy),
        r=_fmt(scale * r),
    )

    half = p.theta_float / 2
    axis = np.array([[math.sin(half), -math.cos(half)], [-math.sin(half), math.cos(half)]]) * reach
    (x1, y1), (x2, y2) = to_px(axis)
    ET.SubElement(
        root,
        "line",
        {"class": "axis", "stroke": "#808080", "stroke-dasharray": "6,4"},
        x1=_fmt(x1),
        y1=_fmt(y1),
        x2=_fmt(x2),
        y2=_fmt(y2),
    )

    outer = TrapSpec(Fraction(reach) ** 2, shifted=trap.shifted)
    lattice = list(ball_states(outer, p))
    dot = max(0.8, min(3.0, scale / 8))
    group = ET.SubElement(root, "g", {"class": "lattice", "fill": "#b0b0b0"})
    for x, y in to_px(embed_real_many(lattice, p, trap.shifted)):
        ET.SubElement(group, "circle", {"class": "point"}, cx=_fmt(x), cy=_fmt(y), r=_fmt(dot))

    hits = trap_states(trap, p)
    group = ET.SubElement(root, "g", {"fill": "#d02020"})
    for x, y in to_px(embed_real_many(hits, p, trap.shifted)) if hits else []:
        ET.SubElement(group, "circle", {"class": "trap"}, cx=_fmt(x), cy=_fmt(y), r=_fmt(dot * 1.8))

    if orbit:
        pts = to_px(embed_real_many(orbit, p, trap.shifted))
        ET.SubElement(
            root,
            "polyline",
            {"class": "orbit", "fill": "none", "stroke": "#208040", "stroke-width": "1"},
            points=" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts),
        )

    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"
