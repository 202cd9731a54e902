"""Minimal self-contained SVG writer for log-log scatter plots."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape, quoteattr

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
MARKERS = ("circle", "square", "triangle")


def _fmt(v):
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _decades(lo, hi):
    return list(range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1))


def _tick_label(exp):
    if -2 <= exp <= 3:
        return f"{10.0 ** exp:g}"
    return f"1e{exp}"


def _marker(kind, x, y, color, r=2.6):
    if kind == "square":
        return f'<rect x="{_fmt(x - r)}" y="{_fmt(y - r)}" width="{_fmt(2 * r)}" height="{_fmt(2 * r)}" fill="{color}"/>'
    if kind == "triangle":
        pts = f"{_fmt(x)},{_fmt(y - r * 1.2)} {_fmt(x - r)},{_fmt(y + r)} {_fmt(x + r)},{_fmt(y + r)}"
        return f'<polygon points="{pts}" fill="{color}"/>'
    return f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{color}"/>'


def loglog_scatter(series, title="", xlabel="n", ylabel="", width=640, height=480):
    """Render ``series`` (list of (label, xs, ys)) as an SVG document string.

    Non-positive points cannot sit on a log axis and are dropped.
    """
    cleaned = []
    for label, xs, ys in series:
        pts = [(float(x), float(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
        cleaned.append((label, pts))
    every = [p for _, pts in cleaned for p in pts]
    if not every:
        raise ValueError("nothing to plot: no positive data points")

    left, right, top, bottom = 78, 20, 40, 56
    pw, ph = width - left - right, height - top - bottom
    xdec = _decades(min(p[0] for p in every), max(p[0] for p in every))
    ydec = _decades(min(p[1] for p in every), max(p[1] for p in every))
    if len(xdec) < 2:
        xdec.append(xdec[-1] + 1)
    if len(ydec) < 2:
        ydec.append(ydec[-1] + 1)
    x0, x1, y0, y1 = xdec[0], xdec[-1], ydec[0], ydec[-1]

    def px(x):
        return left + (math.log10(x) - x0) / (x1 - x0) * pw

    def py(y):
        return top + ph - (math.log10(y) - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')

    grid = []
    ybase = top + ph
    for e in xdec:
        x = _fmt(px(10.0**e))
        grid.append(f'<line x1="{x}" y1="{top}" x2="{x}" y2="{ybase}" stroke="#e0e0e0"/>')
        grid.append(f'<text x="{x}" y="{ybase + 18}" text-anchor="middle">{_tick_label(e)}</text>')
    for e in ydec:
        y = _fmt(py(10.0**e))
        grid.append(f'<line x1="{left}" y1="{y}" x2="{left + pw}" y2="{y}" stroke="#e0e0e0"/>')
        grid.append(f'<text x="{left - 6}" y="{y}" text-anchor="end" dominant-baseline="middle">{_tick_label(e)}</text>')
    out.extend(grid)
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    if xlabel:
        out.append(f'<text x="{left + pw / 2}" y="{height - 14}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        cy = top + ph / 2
        out.append(
            f'<text x="18" y="{cy}" text-anchor="middle" transform="rotate(-90 18 {cy})">{escape(ylabel)}</text>'
        )

    for k, (label, pts) in enumerate(cleaned):
        color = PALETTE[k % len(PALETTE)]
        kind = MARKERS[k % len(MARKERS)]
        out.append(f"<g id={quoteattr(f'series-{k}')}>")
        out.extend(_marker(kind, px(x), py(y), color) for x, y in pts)
        out.append("</g>")
        ly = top + 14 + 18 * k
        lx = left + pw - 150
        out.append(_marker(kind, lx, ly, color, r=4))
        out.append(f'<text x="{lx + 10}" y="{ly}" dominant-baseline="middle">{escape(label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
