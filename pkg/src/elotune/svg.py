"""Standalone SVG charts: a histogram and a multi-series line chart.

Output is plain text built with f-strings, one element per line, no
plotting dependency. Every document opens with an XML comment carrying the
command line that produced it.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from elotune.errors import DomainError

WIDTH, HEIGHT = 720, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 24, 40, 48
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf", "#bcbd22")


def _comment(text: str) -> str:
    # "--" is not allowed inside XML comments
    return "<!-- " + text.replace("--", "- -") + " -->"


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(round(v, 10))
        v += step
    return ticks


class _Canvas:
    def __init__(self, title: str, provenance: str, x_range, y_range, x_label: str, y_label: str) -> None:
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            _comment(f"generated by: {provenance}"),
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        ]
        self._axes(x_label, y_label)

    def px(self, x: float) -> float:
        span = (self.x1 - self.x0) or 1.0
        return MARGIN_L + (x - self.x0) / span * (WIDTH - MARGIN_L - MARGIN_R)

    def py(self, y: float) -> float:
        span = (self.y1 - self.y0) or 1.0
        return HEIGHT - MARGIN_B - (y - self.y0) / span * (HEIGHT - MARGIN_T - MARGIN_B)

    def _axes(self, x_label: str, y_label: str) -> None:
        left, right = MARGIN_L, WIDTH - MARGIN_R
        top, bottom = MARGIN_T, HEIGHT - MARGIN_B
        add = self.parts.append
        add(f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>')
        add(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>')
        for t in _nice_ticks(self.x0, self.x1):
            x = self.px(t)
            add(f'<line x1="{x:.1f}" y1="{bottom}" x2="{x:.1f}" y2="{bottom + 4}" stroke="black"/>')
            add(f'<text x="{x:.1f}" y="{bottom + 16}" text-anchor="middle">{t:g}</text>')
        for t in _nice_ticks(self.y0, self.y1):
            y = self.py(t)
            add(f'<line x1="{left - 4}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" stroke="black"/>')
            add(f'<line x1="{left}" y1="{y:.1f}" x2="{right}" y2="{y:.1f}" stroke="#dddddd"/>')
            add(f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">{t:g}</text>')
        add(f'<text x="{(left + right) / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle">{escape(x_label)}</text>')
        add(
            f'<text x="14" y="{(top + bottom) / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 14 {(top + bottom) / 2:.1f})">{escape(y_label)}</text>'
        )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def histogram_bins(values: Sequence[float], bin_width: float) -> list[tuple[float, int]]:
    """(left edge, count) for contiguous bins aligned to multiples of ``bin_width``."""
    if not (bin_width > 0 and math.isfinite(bin_width)):
        raise DomainError(f"bin width must be positive, got {bin_width}")
    if not values:
        return []
    lo = math.floor(min(values) / bin_width) * bin_width
    n_bins = int(math.floor((max(values) - lo) / bin_width)) + 1
    counts = [0] * n_bins
    for v in values:
        counts[min(int((v - lo) // bin_width), n_bins - 1)] += 1
    return [(lo + i * bin_width, c) for i, c in enumerate(counts)]


def histogram_svg(
    values: Sequence[float],
    bin_width: float = 25.0,
    title: str = "Histogram of ratings",
    x_label: str = "rating",
    provenance: str = "",
) -> str:
    bins = histogram_bins(values, bin_width)
    if bins:
        x_range = (bins[0][0], bins[-1][0] + bin_width)
        y_max = max(c for _, c in bins)
    else:
        x_range, y_max = (0.0, 1.0), 1
    canvas = _Canvas(title, provenance, x_range, (0, y_max), x_label, "players")
    for left, count in bins:
        x0, x1 = canvas.px(left), canvas.px(left + bin_width)
        y = canvas.py(count)
        canvas.parts.append(
            f'<rect x="{x0:.1f}" y="{y:.1f}" width="{x1 - x0:.1f}" height="{canvas.py(0) - y:.1f}" '
            f'fill="{PALETTE[0]}" stroke="white"><title>[{left:g}, {left + bin_width:g}): {count}</title></rect>'
        )
    return canvas.render()


def line_chart_svg(
    series: Mapping[str, Sequence[float]],
    title: str = "Rating progression",
    x_label: str = "games played",
    y_label: str = "rating",
    provenance: str = "",
) -> str:
    """One polyline per series, x = index within the series."""
    names = list(series)
    all_y = [v for n in names for v in series[n]]
    if all_y:
        y_lo, y_hi = min(all_y), max(all_y)
        pad = 0.05 * (y_hi - y_lo) or 10.0
        y_range = (y_lo - pad, y_hi + pad)
        x_max = max(len(series[n]) - 1 for n in names) or 1
    else:
        y_range, x_max = (0.0, 1.0), 1
    canvas = _Canvas(title, provenance, (0, x_max), y_range, x_label, y_label)
    for i, name in enumerate(names):
        colour = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{canvas.px(x):.1f},{canvas.py(y):.1f}" for x, y in enumerate(series[name]))
        canvas.parts.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{pts}"/>')
        ly = MARGIN_T + 14 * i + 4
        lx = WIDTH - MARGIN_R - 150
        canvas.parts.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        canvas.parts.append(f'<text x="{lx + 24}" y="{ly + 4}">{escape(str(name))}</text>')
    return canvas.render()
