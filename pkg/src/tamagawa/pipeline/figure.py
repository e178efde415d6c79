"""Scatter of ln(tau) against ln(N) with Tamagawa-quality contours, as plain SVG."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable
from xml.sax.saxutils import escape

from .records import CurveRecord

CONTOURS = (1.5, 1.8, 2.0, 2.2, 2.4, 7 / 3 * math.log(3))

# (fill, stroke, legend text)
STYLES = {
    "database": ("#2ca02c", "#2ca02c", "Cremona and LMFDB databases"),
    "high-merit": ("#e6c300", "#e6c300", "high merit abc-triples"),
    "medium-quality": ("#d62728", "#d62728", "medium quality abc-triples"),
    "high-quality": ("#1f77b4", "#1f77b4", "high quality abc-triples"),
    "unbeaten": ("#9467bd", "#9467bd", "unbeaten abc-triples"),
    "derived": ("none", "#000000", "triples from triples"),
}
_DRAW_ORDER = ("database", "unbeaten", "high-merit", "medium-quality", "high-quality", "derived")

WIDTH, HEIGHT = 960, 640
LEFT, RIGHT, TOP, BOTTOM = 70, 250, 30, 60


def style_key(source: str) -> str:
    return "database" if source in ("cremona", "lmfdb") else source


def contour_y(q: float, x: float) -> float:
    """ln(tau) on the curve q_tau = q at ln(N) = x."""
    return q * x / math.log(x)


@dataclass(frozen=True)
class Axes:
    xmax: float
    ymax: float

    def px(self, x: float) -> float:
        return LEFT + (WIDTH - LEFT - RIGHT) * x / self.xmax

    def py(self, y: float) -> float:
        return HEIGHT - BOTTOM - (HEIGHT - TOP - BOTTOM) * y / self.ymax

    def data_x(self, px: float) -> float:
        return (px - LEFT) * self.xmax / (WIDTH - LEFT - RIGHT)

    def data_y(self, py: float) -> float:
        return (HEIGHT - BOTTOM - py) * self.ymax / (HEIGHT - TOP - BOTTOM)


def _nice_step(span: float) -> float:
    raw = span / 8
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 5, 10):
        if m * mag >= raw:
            return m * mag
    return 10 * mag


def axes_for(records: list[CurveRecord]) -> Axes:
    if not records:
        return Axes(10.0, 5.0)
    xmax = max(math.log(r.N.n) for r in records) * 1.05
    ymax = max(max(math.log(r.tau.n) for r in records) * 1.1, 1.0)
    return Axes(max(xmax, 2.0), ymax)


def render_svg(records: Iterable[CurveRecord], title: str = "Tamagawa product against conductor") -> str:
    records = list(records)
    ax = axes_for(records)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
           f'<title>{escape(title)}</title>',
           '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
           f'<clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{WIDTH - LEFT - RIGHT}" '
           f'height="{HEIGHT - TOP - BOTTOM}"/></clipPath>']
    x0, x1 = ax.px(0), ax.px(ax.xmax)
    y0, y1 = ax.py(0), ax.py(ax.ymax)

    # axes, ticks and labels
    out.append(f'<g class="axes" stroke="black" fill="none">'
               f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}"/>'
               f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}"/></g>')
    ticks = []
    step = _nice_step(ax.xmax)
    v = 0.0
    while v <= ax.xmax + 1e-9:
        p = ax.px(v)
        ticks.append(f'<line x1="{p:.2f}" y1="{y0:.2f}" x2="{p:.2f}" y2="{y0 + 5:.2f}" stroke="black"/>'
                     f'<text x="{p:.2f}" y="{y0 + 18:.2f}" text-anchor="middle">{v:g}</text>')
        v += step
    step = _nice_step(ax.ymax)
    v = 0.0
    while v <= ax.ymax + 1e-9:
        p = ax.py(v)
        ticks.append(f'<line x1="{x0 - 5:.2f}" y1="{p:.2f}" x2="{x0:.2f}" y2="{p:.2f}" stroke="black"/>'
                     f'<text x="{x0 - 8:.2f}" y="{p + 4:.2f}" text-anchor="end">{v:g}</text>')
        v += step
    out.append('<g class="ticks">' + "".join(ticks) + "</g>")
    out.append(f'<text class="xlabel" x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">ln N</text>')
    out.append(f'<text class="ylabel" x="18" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">ln &#964;</text>')

    # contours q_tau = q, i.e. y = q x / ln x, for x > e^(1/4)
    out.append('<g class="contours" clip-path="url(#plot)" fill="none" stroke="#888888" stroke-width="1">')
    lo = 1.3
    for q in CONTOURS:
        pts = []
        for i in range(301):
            x = lo + (ax.xmax - lo) * i / 300
            y = min(contour_y(q, x), 4 * ax.ymax)
            pts.append(f"{ax.px(x):.2f},{ax.py(y):.2f}")
        out.append(f'<polyline class="contour" data-q="{q:.6f}" points="{" ".join(pts)}"/>')
    out.append("</g>")
    for q in CONTOURS:
        # label at the right edge when the contour ends inside the plot
        y = contour_y(q, ax.xmax)
        if y <= ax.ymax:
            out.append(f'<text class="contour-label" x="{x1 + 4:.2f}" y="{ax.py(y) + 4:.2f}" '
                       f'fill="#555555">{q:.3f}</text>')

    # dots, drawn by category so the rare sources end on top
    groups: dict[str, list[CurveRecord]] = {}
    for r in records:
        groups.setdefault(style_key(r.source), []).append(r)
    for key in sorted(groups, key=lambda k: _DRAW_ORDER.index(k) if k in _DRAW_ORDER else len(_DRAW_ORDER)):
        fill, stroke, _ = STYLES.get(key, ("#7f7f7f", "#7f7f7f", key))
        out.append(f'<g class="dots" data-style="{escape(key)}">')
        for r in groups[key]:
            cx, cy = ax.px(math.log(r.N.n)), ax.py(math.log(r.tau.n))
            out.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="3" fill="{fill}" stroke="{stroke}" '
                       f'data-source="{escape(r.source)}" data-n="{r.N.n}" data-tau="{r.tau.n}" '
                       f'data-q-tau="{r.q_tau:.5f}"/>')
        out.append("</g>")

    # legend
    lx, ly = WIDTH - RIGHT + 50, TOP + 10
    rows = [k for k in _DRAW_ORDER if k in STYLES]
    out.append(f'<g class="legend"><rect x="{lx - 10}" y="{ly - 5}" width="{RIGHT - 55}" '
               f'height="{22 * len(rows) + 32}" fill="white" stroke="black"/>')
    out.append(f'<line x1="{lx}" y1="{ly + 10}" x2="{lx + 14}" y2="{ly + 10}" stroke="#888888"/>'
               f'<text x="{lx + 20}" y="{ly + 14}">q_&#964; contours</text>')
    for i, k in enumerate(rows, 1):
        fill, stroke, text = STYLES[k]
        y = ly + 10 + 22 * i
        out.append(f'<circle cx="{lx + 7}" cy="{y}" r="4" fill="{fill}" stroke="{stroke}"/>'
                   f'<text x="{lx + 20}" y="{y + 4}">{escape(text)}</text>')
    out.append("</g></svg>")
    return "\n".join(out) + "\n"


def emit_figure(records: Iterable[CurveRecord], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(records))
    return path
