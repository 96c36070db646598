"""Minimal static SVG line plots (no plotting dependency), laid out as panel grids."""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf")
PANEL_W, PANEL_H = 420, 300
MARGIN = dict(left=62, right=14, top=30, bottom=44)
MAX_POINTS = 1500


@dataclass
class Panel:
    title: str
    xlabel: str
    ylabel: str
    series: list = field(default_factory=list)  # (label, x, y)

    def add(self, label: str, x, y) -> "Panel":
        self.series.append((label, np.asarray(x, dtype=float), np.asarray(y, dtype=float)))
        return self


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> np.ndarray:
    span = hi - lo
    raw = span / max(n - 1, 1)
    mag = 10.0 ** np.floor(np.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    start = np.ceil(lo / step - 1e-9) * step
    ticks = np.arange(start, hi + 1e-9 * span, step)
    ticks[np.abs(ticks) < 1e-9 * step] = 0.0  # no "-0" labels
    return ticks


def _thin(x: np.ndarray, y: np.ndarray):
    if x.size <= MAX_POINTS:
        return x, y
    idx = np.unique(np.linspace(0, x.size - 1, MAX_POINTS).round().astype(int))
    return x[idx], y[idx]


def _limits(values: list[np.ndarray]) -> tuple[float, float]:
    finite = np.concatenate([v[np.isfinite(v)] for v in values]) if values else np.zeros(1)
    lo, hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if hi - lo < 1e-12 * max(1.0, abs(hi)):
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.04 * (hi - lo)
    return lo - pad, hi + pad


def _panel_svg(p: Panel, ox: float, oy: float) -> list[str]:
    left, top = ox + MARGIN["left"], oy + MARGIN["top"]
    w = PANEL_W - MARGIN["left"] - MARGIN["right"]
    h = PANEL_H - MARGIN["top"] - MARGIN["bottom"]
    x0, x1 = _limits([s[1] for s in p.series])
    y0, y1 = _limits([s[2] for s in p.series])

    def sx(v):
        return left + (v - x0) / (x1 - x0) * w

    def sy(v):
        return top + (y1 - v) / (y1 - y0) * h

    out = [f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{w}" height="{h}" fill="none" stroke="#444"/>',
           f'<text x="{_fmt(left + w / 2)}" y="{_fmt(oy + 20)}" text-anchor="middle" font-size="14">{escape(p.title)}</text>',
           f'<text x="{_fmt(left + w / 2)}" y="{_fmt(oy + PANEL_H - 8)}" text-anchor="middle" font-size="12">{escape(p.xlabel)}</text>',
           f'<text x="{_fmt(ox + 14)}" y="{_fmt(top + h / 2)}" text-anchor="middle" font-size="12" '
           f'transform="rotate(-90 {_fmt(ox + 14)} {_fmt(top + h / 2)})">{escape(p.ylabel)}</text>']
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{_fmt(sx(t))}" y1="{_fmt(top + h)}" x2="{_fmt(sx(t))}" y2="{_fmt(top + h + 4)}" stroke="#444"/>')
        out.append(f'<text x="{_fmt(sx(t))}" y="{_fmt(top + h + 16)}" text-anchor="middle" font-size="10">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{_fmt(left - 4)}" y1="{_fmt(sy(t))}" x2="{_fmt(left)}" y2="{_fmt(sy(t))}" stroke="#444"/>')
        out.append(f'<text x="{_fmt(left - 6)}" y="{_fmt(sy(t) + 3)}" text-anchor="end" font-size="10">{t:.4g}</text>')
    if y0 < 0 < y1:
        out.append(f'<line x1="{_fmt(left)}" y1="{_fmt(sy(0))}" x2="{_fmt(left + w)}" y2="{_fmt(sy(0))}" '
                   'stroke="#bbb" stroke-dasharray="3,3"/>')
    for i, (label, x, y) in enumerate(p.series):
        color = PALETTE[i % len(PALETTE)]
        x, y = _thin(x, y)
        ok = np.isfinite(x) & np.isfinite(y)
        pts = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in zip(x[ok], y[ok]))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.4"/>')
        ly = top + 14 + 14 * i
        out.append(f'<line x1="{_fmt(left + w - 70)}" y1="{_fmt(ly - 4)}" x2="{_fmt(left + w - 52)}" y2="{_fmt(ly - 4)}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{_fmt(left + w - 48)}" y="{_fmt(ly)}" font-size="10">{escape(label)}</text>')
    return out


def render(panels: list[Panel], ncols: int = 2) -> str:
    """SVG document with panels in row-major order on an ``ncols`` grid."""
    nrows = -(-len(panels) // ncols)
    width, height = ncols * PANEL_W, nrows * PANEL_H
    body = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
            f'<rect width="{width}" height="{height}" fill="white"/>']
    for i, p in enumerate(panels):
        body.extend(_panel_svg(p, (i % ncols) * PANEL_W, (i // ncols) * PANEL_H))
    body.append("</svg>")
    return "\n".join(body) + "\n"


def write_svg(path, panels: list[Panel], ncols: int = 2) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(panels, ncols))
