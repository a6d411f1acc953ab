"""Tiny standalone SVG line plots.

Figures here are conveniences, not contracts, so the plotter stays
deliberately small: axes, ticks, polylines, legend. No external renderer.
"""

from __future__ import annotations

import numpy as np

__all__ = ["line_plot"]

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 64, 16, 34, 46   # margins: left, right, top, bottom


def _ticks(lo: float, hi: float, count: int = 5) -> np.ndarray:
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    step = 10.0 ** np.floor(np.log10(span / count))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if span / (step * mult) <= count:
            step *= mult
            break
    first = np.ceil(lo / step) * step
    return np.arange(first, hi + 0.5 * step, step)


def _esc(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def line_plot(path, x, series, title: str = "", xlabel: str = "",
              ylabel: str = "") -> None:
    """Write a line plot to ``path``.

    ``series`` is a list of (label, y-array) pairs sharing the abscissa
    ``x``. Axis ranges are padded 4% beyond the data.
    """
    x = np.asarray(x, dtype=float)
    if not series:
        raise ValueError("need at least one series")
    ys = [np.asarray(y, dtype=float) for _, y in series]
    for y in ys:
        if y.shape != x.shape:
            raise ValueError("series length differs from x")
    xlo, xhi = float(x.min()), float(x.max())
    ylo = min(float(np.nanmin(y)) for y in ys)
    yhi = max(float(np.nanmax(y)) for y in ys)
    if yhi == ylo:
        ylo, yhi = ylo - 1.0, yhi + 1.0
    xpad = 0.04 * (xhi - xlo) or 1.0
    ypad = 0.04 * (yhi - ylo)
    xlo -= xpad
    xhi += xpad
    ylo -= ypad
    yhi += ypad

    def px(v):
        return _ML + (v - xlo) / (xhi - xlo) * (_W - _ML - _MR)

    def py(v):
        return _H - _MB - (v - ylo) / (yhi - ylo) * (_H - _MT - _MB)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
        f'height="{_H - _MT - _MB}" fill="none" stroke="#444"/>',
    ]
    font = 'font-family="sans-serif" font-size="11"'
    for tv in _ticks(xlo + xpad, xhi - xpad):
        if tv < xlo or tv > xhi:
            continue
        xp = px(tv)
        out.append(f'<line x1="{xp:.1f}" y1="{_H - _MB}" x2="{xp:.1f}" '
                   f'y2="{_H - _MB + 4}" stroke="#444"/>')
        out.append(f'<text x="{xp:.1f}" y="{_H - _MB + 16}" {font} '
                   f'text-anchor="middle">{tv:.4g}</text>')
    for tv in _ticks(ylo + ypad, yhi - ypad):
        if tv < ylo or tv > yhi:
            continue
        yp = py(tv)
        out.append(f'<line x1="{_ML - 4}" y1="{yp:.1f}" x2="{_ML}" '
                   f'y2="{yp:.1f}" stroke="#444"/>')
        out.append(f'<text x="{_ML - 7}" y="{yp + 4:.1f}" {font} '
                   f'text-anchor="end">{tv:.4g}</text>')
    for i, ((label, _), y) in enumerate(zip(series, ys)):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{px(xv):.1f},{py(yv):.1f}"
                       for xv, yv in zip(x, y) if np.isfinite(yv))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="1.4"/>')
        if label:
            lx = _W - _MR - 8
            lyp = _MT + 14 + 14 * i
            out.append(f'<line x1="{lx - 30}" y1="{lyp - 4}" x2="{lx - 12}" '
                       f'y2="{lyp - 4}" stroke="{color}" stroke-width="1.4"/>')
            out.append(f'<text x="{lx - 34}" y="{lyp}" {font} '
                       f'text-anchor="end">{_esc(label)}</text>')
    if title:
        out.append(f'<text x="{(_ML + _W - _MR) / 2}" y="{_MT - 12}" {font} '
                   f'font-size="13" text-anchor="middle">{_esc(title)}</text>')
    if xlabel:
        out.append(f'<text x="{(_ML + _W - _MR) / 2}" y="{_H - 8}" {font} '
                   f'text-anchor="middle">{_esc(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="14" y="{(_MT + _H - _MB) / 2}" {font} '
                   f'text-anchor="middle" '
                   f'transform="rotate(-90 14 {(_MT + _H - _MB) / 2})">'
                   f'{_esc(ylabel)}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(out) + "\n")
