"""Self-contained SVG 1.1 polyline plots."""
from __future__ import annotations

from xml.sax.saxutils import escape

__all__ = ["polyline_svg", "write_svg"]

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def polyline_svg(series, *, title: str = "", markers=(), size: int = 480,
                 closed: bool = False) -> str:
    """Plot each entry of ``series`` (a list of (x, y) pairs) as a polyline.

    The viewport is the data bounding box plus a 5% margin, with y pointing
    up.  ``markers`` are extra (x, y) points drawn as small circles.
    """
    pts = [p for s in series for p in s] + list(markers)
    if not pts:
        pts = [(0.0, 0.0)]
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    mx, my = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    half = 0.5 * span * 1.1
    scale = size / (2 * half)

    def sx(x):
        return (x - (mx - half)) * scale

    def sy(y):
        return ((my + half) - y) * scale

    body = [f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>']
    if x0 <= 0 <= x1 or y0 <= 0 <= y1:
        body.append(f'<line x1="{sx(mx - half):.3f}" y1="{sy(0):.3f}" x2="{sx(mx + half):.3f}" '
                    f'y2="{sy(0):.3f}" stroke="#cccccc" stroke-width="0.5"/>')
        body.append(f'<line x1="{sx(0):.3f}" y1="{sy(my - half):.3f}" x2="{sx(0):.3f}" '
                    f'y2="{sy(my + half):.3f}" stroke="#cccccc" stroke-width="0.5"/>')
    for k, s in enumerate(series):
        coords = " ".join(f"{sx(float(x)):.3f},{sy(float(y)):.3f}" for x, y in s)
        tag = "polygon" if closed else "polyline"
        body.append(f'<{tag} points="{coords}" fill="none" '
                    f'stroke="{_COLORS[k % len(_COLORS)]}" stroke-width="1"/>')
    for x, y in markers:
        body.append(f'<circle cx="{sx(float(x)):.3f}" cy="{sy(float(y)):.3f}" r="3" fill="black"/>')
    if title:
        body.append(f'<text x="8" y="18" font-family="sans-serif" font-size="13">'
                    f'{escape(title)}</text>')
    return (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
            f'height="{size}" viewBox="0 0 {size} {size}">\n  ' + "\n  ".join(body) + "\n</svg>\n")


def write_svg(path, series, **kw) -> None:
    with open(path, "w") as fh:
        fh.write(polyline_svg(series, **kw))
