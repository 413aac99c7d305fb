"""SVG 1.1 output for the construction figure and the gnomon panels.

Exact coordinates become floats only inside :meth:`Viewport.to_screen`, the
single world-to-screen transform (feet to pixels, y axis flipped).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from . import __version__
from .construction import TheodorusFigure
from .criterion import multiple_decompose

__all__ = ["RenderConfig", "render_figure_svg", "render_gnomon_svg", "MAX_GNOMON_CELLS"]

MAX_GNOMON_CELLS = 50_000


@dataclass(frozen=True)
class RenderConfig:
    pixels_per_foot: int = 80
    stroke_width: float = 2.0
    spoke_width: float = 3.0
    labels: bool = True
    arc_window_deg: float = 25.0
    margin: int = 40
    show_optional: bool = False

    def __post_init__(self) -> None:
        if self.pixels_per_foot < 1:
            raise ValueError("pixels_per_foot must be >= 1")
        if not 0 < self.arc_window_deg <= 90:
            raise ValueError("arc_window_deg must be in (0, 90]")
        if self.stroke_width <= 0 or self.spoke_width <= 0:
            raise ValueError("stroke widths must be positive")


@dataclass(frozen=True)
class Viewport:
    scale: float
    margin: float
    top: float  # world y at the top edge

    def to_screen(self, x: float, y: float) -> tuple[float, float]:
        return (self.margin + x * self.scale, self.margin + (self.top - y) * self.scale)


def _f(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _header(width: float, height: float, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
        f"<title>{escape(title)}</title>",
        "<style>.baseline,.tick,.axis,.arc{stroke:#222;fill:none}"
        ".spoke{stroke:#a33}.label{font:14px serif}"
        ".cell{fill:#fff;stroke:#444}.highlight{fill:#e8b94a}</style>",
    ]


def _metadata(payload: dict) -> str:
    return f"<metadata>{escape(json.dumps(payload, sort_keys=True))}</metadata>"


def render_figure_svg(fig: TheodorusFigure, cfg: RenderConfig | None = None) -> str:
    cfg = cfg or RenderConfig()
    last_mark = float(fig.baseline_marks[-1].x)
    far_x = max(float(s.far_point.x) for s in fig.spokes)
    right = max(last_mark, far_x) if cfg.show_optional else last_mark
    tallest = max(float(s.top.y) for s in fig.spokes)
    top = tallest + 0.75
    vp = Viewport(cfg.pixels_per_foot, cfg.margin, top)
    width = 2 * cfg.margin + (right + 0.5) * cfg.pixels_per_foot
    height = 2 * cfg.margin + (top + 0.5) * cfg.pixels_per_foot
    out = _header(width, height, f"Theodorus construction up to {fig.max_odd} feet")
    out.append(
        _metadata(
            {
                "generator": f"theodorus {__version__}",
                "max_odd": fig.max_odd,
                "arcs": len(fig.arcs),
                "spokes": len(fig.spokes),
                "ticks": len(fig.baseline_marks),
            }
        )
    )
    sw = _f(cfg.stroke_width)

    x0, y0 = vp.to_screen(0, 0)
    x1, _ = vp.to_screen(right + 0.25, 0)
    out.append(f'<line class="baseline" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" stroke-width="{sw}"/>')
    tick = 0.08 * cfg.pixels_per_foot
    for i, mark in enumerate(fig.baseline_marks):
        mx, my = vp.to_screen(float(mark.x), 0)
        out.append(
            f'<line class="tick" data-feet="{i}" x1="{_f(mx)}" y1="{_f(my - tick)}" '
            f'x2="{_f(mx)}" y2="{_f(my + tick)}" stroke-width="{sw}"/>'
        )
        if cfg.labels and fig.mark_label(i):
            out.append(f'<text class="label" x="{_f(mx - 4)}" y="{_f(my + 4 * tick)}">{fig.mark_label(i)}</text>')

    qx, qy = vp.to_screen(1, 0)
    _, ty = vp.to_screen(1, top - 0.25)
    out.append(f'<line class="axis" x1="{_f(qx)}" y1="{_f(qy)}" x2="{_f(qx)}" y2="{_f(ty)}" stroke-width="1"/>')

    window = math.radians(cfg.arc_window_deg)
    for spoke, circle in zip(fig.spokes, fig.arcs):
        cx, r = float(circle.center.x), float(circle.radius)
        theta = math.atan2(float(spoke.top.y), 1.0 - cx)
        lo, hi = theta - window, min(theta + window, math.pi)
        ax, ay = vp.to_screen(cx + r * math.cos(lo), r * math.sin(lo))
        bx, by = vp.to_screen(cx + r * math.cos(hi), r * math.sin(hi))
        rr = _f(r * cfg.pixels_per_foot)
        # counter-clockwise in world is clockwise on screen, hence sweep-flag 1
        out.append(
            f'<path class="arc" data-n="{spoke.n}" d="M {_f(ax)} {_f(ay)} A {rr} {rr} 0 0 1 {_f(bx)} {_f(by)}" '
            f'stroke-width="{sw}"/>'
        )

    for spoke in fig.spokes:
        fx, fy = vp.to_screen(float(spoke.foot.x), float(spoke.foot.y))
        tx, tyy = vp.to_screen(float(spoke.top.x), float(spoke.top.y))
        out.append(
            f'<line class="spoke" data-n="{spoke.n}" data-height={quoteattr(str(spoke.top.y))} '
            f'x1="{_f(fx)}" y1="{_f(fy)}" x2="{_f(tx)}" y2="{_f(tyy)}" stroke-width="{_f(cfg.spoke_width)}"/>'
        )
        if cfg.labels:
            name = spoke.label or ""
            text = f"{name} √{spoke.n}".strip() if name else f"√{spoke.n}"
            out.append(f'<text class="label" x="{_f(tx + 6)}" y="{_f(tyy + 4)}">{escape(text)}</text>')
        if cfg.show_optional and not spoke.far_point_drawn:
            px, py = vp.to_screen(float(spoke.far_point.x), 0)
            out.append(
                f'<circle class="far-point optional" data-n="{spoke.n}" cx="{_f(px)}" cy="{_f(py)}" r="3"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_gnomon_svg(m: int, q: int, cfg: RenderConfig | None = None) -> str:
    """Left: ``m`` squares of side ``q``.  Right: an 8-wide rectangle plus leftover units.

    One corner unit of each left square and the leftover units on the right
    carry the ``highlight`` class.
    """
    cfg = cfg or RenderConfig(pixels_per_foot=20)
    dec = multiple_decompose(m, q)
    left_cells = m * q * q
    right_cells = 8 * dec.eights + dec.units
    if left_cells > MAX_GNOMON_CELLS:
        raise ValueError(f"{left_cells} cells is too many to draw (limit {MAX_GNOMON_CELLS})")
    cell = cfg.pixels_per_foot
    gap = cell
    # left panel: squares stacked in a column
    left_w = q * cell
    left_h = m * q * cell + (m - 1) * gap
    right_rows = dec.eights + (1 if dec.units else 0)
    right_x = cfg.margin + left_w + 3 * gap
    width = right_x + 8 * cell + cfg.margin
    height = 2 * cfg.margin + max(left_h, right_rows * cell)

    out = _header(width, height, f"{m} squares of side {q} as an 8-wide rectangle plus units")
    out.append(
        _metadata(
            {
                "generator": f"theodorus {__version__}",
                "m": m,
                "q": q,
                "eights": dec.eights,
                "units": dec.units,
                "left_cells": left_cells,
                "right_cells": right_cells,
            }
        )
    )

    def rect(x: float, y: float, highlight: bool) -> str:
        cls = "cell highlight" if highlight else "cell"
        return f'<rect class="{cls}" x="{_f(x)}" y="{_f(y)}" width="{cell}" height="{cell}"/>'

    out.append(f'<g class="panel left" data-cells="{left_cells}">')
    for k in range(m):
        oy = cfg.margin + k * (q * cell + gap)
        for i in range(q):
            for j in range(q):
                corner = i == q - 1 and j == q - 1
                out.append(rect(cfg.margin + j * cell, oy + i * cell, corner))
    out.append("</g>")

    out.append(f'<g class="panel right" data-cells="{right_cells}">')
    for row in range(dec.eights):
        for col in range(8):
            out.append(rect(right_x + col * cell, cfg.margin + row * cell, False))
    for col in range(dec.units):
        out.append(rect(right_x + col * cell, cfg.margin + dec.eights * cell, True))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
