"""Result serialization: machine-readable tables and static SVG figures.

Tables are written as CSV or JSON with full-precision values; rounding is a
display option, never applied to stored numbers. Figures are generated
directly as SVG text (fixed 800x600 viewport, linear axes auto-scaled with
5% margins), so identical inputs produce byte-identical files.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

from inertia.errors import EmptyInputError

__all__ = [
    "TableDoc",
    "emit_table",
    "render_scatter",
    "render_histogram",
]

WIDTH = 800.0
HEIGHT = 600.0
MARGIN_LEFT = 72.0
MARGIN_RIGHT = 24.0
MARGIN_TOP = 42.0
MARGIN_BOTTOM = 58.0

_SERIES_FILL = ("#1f77b4", "#d62728")


@dataclass(frozen=True)
class TableDoc:
    """A named table: ordered column names plus rows of cells."""

    name: str
    columns: tuple
    rows: tuple

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(f"{self.name}: row {i} has {len(row)} cells, "
                                 f"expected {len(self.columns)}")


def _format_cell(value, round_digits):
    if isinstance(value, float):
        if round_digits is None:
            return repr(value)
        return f"{value:.{round_digits}f}"
    return str(value)


def _round_cell(value, round_digits):
    if isinstance(value, float) and round_digits is not None:
        return round(value, round_digits)
    return value


def emit_table(doc, fmt, path, round_digits=None):
    """Write a TableDoc as ``csv`` or ``json``.

    CSV follows the data-file conventions (UTF-8, comma, '.' decimal) and
    floats round-trip exactly unless ``round_digits`` asks for display
    rounding. JSON is an object {name, columns, rows}.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        lines = [",".join(doc.columns)]
        for row in doc.rows:
            lines.append(",".join(_format_cell(c, round_digits) for c in row))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif fmt == "json":
        payload = {
            "name": doc.name,
            "columns": list(doc.columns),
            "rows": [[_round_cell(c, round_digits) for c in row]
                     for row in doc.rows],
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
    else:
        raise ValueError(f"unknown table format {fmt!r}")
    return path


class _Axes:
    """Linear data-to-pixel transform with padded extents and round ticks."""

    def __init__(self, xmin, xmax, ymin, ymax):
        self.xmin, self.xmax = _pad_range(xmin, xmax)
        self.ymin, self.ymax = _pad_range(ymin, ymax)

    def x_px(self, x):
        span = self.xmax - self.xmin
        return MARGIN_LEFT + (x - self.xmin) / span * (WIDTH - MARGIN_LEFT
                                                       - MARGIN_RIGHT)

    def y_px(self, y):
        span = self.ymax - self.ymin
        return (HEIGHT - MARGIN_BOTTOM
                - (y - self.ymin) / span * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM))

    def x_ticks(self):
        return _ticks(self.xmin, self.xmax)

    def y_ticks(self):
        return _ticks(self.ymin, self.ymax)


def _pad_range(lo, hi):
    if hi < lo:
        lo, hi = hi, lo
    span = hi - lo
    if span == 0.0:
        pad = max(abs(lo) * 0.05, 1.0)
    else:
        pad = span * 0.05
    return lo - pad, hi + pad


def _ticks(lo, hi, target=6):
    span = hi - lo
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if span / step <= target + 1:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt_tick(value):
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return f"{value:g}"


def _esc(text):
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def _svg_open(title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" '
        f'height="{HEIGHT:.0f}" viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-size="16" font-family="sans-serif">{_esc(title)}</text>',
    ]


def _svg_axes(ax, x_label, y_label):
    left = MARGIN_LEFT
    right = WIDTH - MARGIN_RIGHT
    top = MARGIN_TOP
    bottom = HEIGHT - MARGIN_BOTTOM
    parts = []
    for t in ax.y_ticks():
        y = ax.y_px(t)
        parts.append(f'<line x1="{left:.2f}" y1="{y:.2f}" x2="{right:.2f}" '
                     f'y2="{y:.2f}" stroke="#dddddd" stroke-width="1"/>')
        parts.append(f'<text x="{left - 8:.2f}" y="{y + 4:.2f}" '
                     f'text-anchor="end" font-size="11" '
                     f'font-family="sans-serif">{_fmt_tick(t)}</text>')
    for t in ax.x_ticks():
        x = ax.x_px(t)
        parts.append(f'<line x1="{x:.2f}" y1="{bottom:.2f}" x2="{x:.2f}" '
                     f'y2="{bottom + 5:.2f}" stroke="#000000" stroke-width="1"/>')
        parts.append(f'<text x="{x:.2f}" y="{bottom + 20:.2f}" '
                     f'text-anchor="middle" font-size="11" '
                     f'font-family="sans-serif">{_fmt_tick(t)}</text>')
    parts.append(f'<line x1="{left:.2f}" y1="{bottom:.2f}" x2="{right:.2f}" '
                 f'y2="{bottom:.2f}" stroke="#000000" stroke-width="1.5"/>')
    parts.append(f'<line x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" '
                 f'y2="{bottom:.2f}" stroke="#000000" stroke-width="1.5"/>')
    parts.append(f'<text x="{(left + right) / 2:.1f}" y="{HEIGHT - 14:.1f}" '
                 f'text-anchor="middle" font-size="13" '
                 f'font-family="sans-serif">{_esc(x_label)}</text>')
    parts.append(f'<text x="18" y="{(top + bottom) / 2:.1f}" '
                 f'text-anchor="middle" font-size="13" '
                 f'font-family="sans-serif" transform="rotate(-90 18 '
                 f'{(top + bottom) / 2:.1f})">{_esc(y_label)}</text>')
    return parts


def _write_svg(path, parts):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(parts) + "\n</svg>\n", encoding="utf-8")
    return path


def render_scatter(points, path, fit=None, title="", x_label="x", y_label="y"):
    """Scatter plot with an optional regression line.

    One circle marker per point; when a fit is given, the line spans the
    data x-range and its equation (slope to three decimals) is printed in
    the top-left corner of the plot area.
    """
    points = list(points)
    if not points:
        raise EmptyInputError("no points to plot")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    ymin, ymax = min(ys), max(ys)
    if fit is not None:
        y0 = fit.intercept + fit.slope * min(xs)
        y1 = fit.intercept + fit.slope * max(xs)
        ymin = min(ymin, y0, y1)
        ymax = max(ymax, y0, y1)
    ax = _Axes(min(xs), max(xs), ymin, ymax)
    parts = _svg_open(title)
    parts.extend(_svg_axes(ax, x_label, y_label))
    parts.append('<g class="points">')
    for x, y in points:
        parts.append(f'<circle cx="{ax.x_px(x):.2f}" cy="{ax.y_px(y):.2f}" '
                     f'r="3" fill="#1f77b4" fill-opacity="0.75"/>')
    parts.append('</g>')
    if fit is not None:
        x0, x1 = min(xs), max(xs)
        parts.append(
            f'<line class="fit" x1="{ax.x_px(x0):.2f}" '
            f'y1="{ax.y_px(fit.intercept + fit.slope * x0):.2f}" '
            f'x2="{ax.x_px(x1):.2f}" '
            f'y2="{ax.y_px(fit.intercept + fit.slope * x1):.2f}" '
            f'stroke="#d62728" stroke-width="2"/>')
        sign = "+" if fit.intercept >= 0 else "-"
        parts.append(
            f'<text x="{MARGIN_LEFT + 10:.1f}" y="{MARGIN_TOP + 16:.1f}" '
            f'font-size="12" font-family="sans-serif">'
            f'y = {fit.slope:.3f}x {sign} {abs(fit.intercept):.1f}'
            f'  (p = {fit.p_value:.3f})</text>')
    return _write_svg(path, parts)


def render_histogram(hist, path, overlay=None, title="",
                     x_label="value", y_label="count",
                     labels=("original", "demeaned")):
    """Bar chart of a histogram, optionally overlaid with a second one.

    The primary series is drawn as filled bars, the overlay as outlined
    translucent bars on the same axes; bar heights are proportional to
    counts.
    """
    if not hist.counts:
        raise EmptyInputError("histogram has no occupied bins")
    if overlay is not None and not overlay.counts:
        raise EmptyInputError("overlay histogram has no occupied bins")
    series = [hist] + ([overlay] if overlay is not None else [])
    lo = min(h.bin_edges(min(h.counts))[0] for h in series)
    hi = max(h.bin_edges(max(h.counts))[1] for h in series)
    peak = max(max(h.counts.values()) for h in series)
    ax = _Axes(lo, hi, 0.0, float(peak))
    parts = _svg_open(title)
    parts.extend(_svg_axes(ax, x_label, y_label))
    base = ax.y_px(0.0)
    for si, h in enumerate(series):
        fill = _SERIES_FILL[si % len(_SERIES_FILL)]
        opacity = "0.85" if si == 0 else "0.55"
        parts.append(f'<g class="series-{si}">')
        for k, count in h.sorted_items():
            left, right = h.bin_edges(k)
            x0 = ax.x_px(left)
            x1 = ax.x_px(right)
            y1 = ax.y_px(float(count))
            parts.append(
                f'<rect x="{x0:.2f}" y="{y1:.2f}" width="{x1 - x0:.2f}" '
                f'height="{base - y1:.2f}" fill="{fill}" '
                f'fill-opacity="{opacity}" stroke="#333333" '
                f'stroke-width="0.5"/>')
        parts.append('</g>')
        parts.append(
            f'<text x="{WIDTH - MARGIN_RIGHT - 6:.1f}" '
            f'y="{MARGIN_TOP + 16 + 16 * si:.1f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif" fill="{fill}">'
            f'{_esc(labels[si])}</text>')
    return _write_svg(path, parts)
