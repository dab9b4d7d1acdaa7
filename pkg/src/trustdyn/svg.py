"""Minimal self-contained SVG line charts."""

import math
from pathlib import Path
from xml.sax.saxutils import escape

from .exceptions import EmptySeries

WIDTH, HEIGHT = 720, 420
MARGIN = dict(left=70, right=160, top=40, bottom=45)
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _fmt(x):
    return f"{x:.4g}"


def render_svg(series, title, clip=None):
    """Return the SVG document as a string; see :func:`emit_svg`."""
    items = list(series.items()) if hasattr(series, "items") else list(series)
    if not items:
        raise EmptySeries("no series to plot")
    cleaned = []
    truncated = False
    for name, (times, values) in items:
        times, values = list(map(float, times)), list(map(float, values))
        if not times or len(times) != len(values):
            raise EmptySeries(f"series {name!r} is empty or has mismatched lengths")
        if clip is not None:
            bounded = [max(-clip, min(clip, v)) if math.isfinite(v) else math.copysign(clip, v)
                       for v in values]
            truncated |= bounded != values
            values = bounded
        cleaned.append((str(name), times, values))
    if truncated:
        title = f"{title} [truncated at ±{clip:g}]"

    xs = [x for _, t, _ in cleaned for x in t]
    ys = [y for _, _, v in cleaned for y in v if math.isfinite(y)] or [0.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        pad = abs(y0) * 0.05 or 0.5
        y0, y1 = y0 - pad, y1 + pad

    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(x):
        return MARGIN["left"] + (x - x0) / (x1 - x0) * pw

    def py(y):
        return MARGIN["top"] + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line class="axis" x1="{px(x0):.2f}" y1="{py(y0):.2f}" x2="{px(x1):.2f}" y2="{py(y0):.2f}" stroke="black"/>',
        f'<line class="axis" x1="{px(x0):.2f}" y1="{py(y0):.2f}" x2="{px(x0):.2f}" y2="{py(y1):.2f}" stroke="black"/>',
    ]
    for k in range(5):
        xv = x0 + (x1 - x0) * k / 4
        yv = y0 + (y1 - y0) * k / 4
        out.append(f'<text x="{px(xv):.2f}" y="{py(y0) + 16:.2f}" text-anchor="middle">{_fmt(xv)}</text>')
        out.append(f'<text x="{px(x0) - 6:.2f}" y="{py(yv) + 4:.2f}" text-anchor="end">{_fmt(yv)}</text>')

    for k, (name, times, values) in enumerate(cleaned):
        colour = PALETTE[k % len(PALETTE)]
        points = " ".join(f"{px(t):.2f},{py(v):.2f}" for t, v in zip(times, values) if math.isfinite(v))
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{points}">'
                   f'<title>{escape(name)}</title></polyline>')
        ly = MARGIN["top"] + 14 * k + 6
        lx = WIDTH - MARGIN["right"] + 12
        out.append(f'<g class="legend"><line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" '
                   f'stroke="{colour}" stroke-width="2"/>'
                   f'<text x="{lx + 24}" y="{ly + 4}">{escape(name)}</text></g>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(series, title, path, clip=None):
    """Write a line chart of ``series`` to ``path``.

    ``series`` maps a name to a ``(times, values)`` pair (a list of
    ``(name, (times, values))`` tuples also works). With ``clip`` set, values
    beyond ``+-clip`` are clamped and the title gains a truncation marker.
    """
    document = render_svg(series, title, clip)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document, encoding="utf-8")
    return path
