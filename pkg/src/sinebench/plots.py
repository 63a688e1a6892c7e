"""Hand-rolled SVG charts.

Charts are pure functions of their inputs with fixed-precision coordinate
formatting, so rendering the same numbers twice yields byte-identical files.
That property is load-bearing for reproducibility checks and rules out
toolkits that embed timestamps or hashed element ids.
"""

import math
from typing import Sequence

from .metrics import BoxplotStats

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 76, 16, 40, 58

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

FONT = "font-family=\"DejaVu Sans, sans-serif\""


def _esc(text: str) -> str:
    return (
        str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_step(span: float) -> float:
    raw = span / 4.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def _linear_ticks(lo: float, hi: float) -> list[float]:
    if hi <= lo:
        lo, hi = lo - 1.0, hi + 1.0
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step)
    return [t * step for t in range(first, math.floor(hi / step) + 1)]


def _tick_label(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-3:
        return f"{v:.0e}"
    return f"{v:g}"


class _Frame:
    """Maps data coordinates onto the plot rectangle."""

    def __init__(self, y_lo: float, y_hi: float, n_slots: int, log_y: bool):
        self.log_y = log_y
        if log_y:
            y_lo, y_hi = math.log10(y_lo), math.log10(y_hi)
        pad = 0.05 * (y_hi - y_lo) or 1.0
        self.y_lo, self.y_hi = y_lo - pad, y_hi + pad
        self.n_slots = n_slots
        self.x0, self.x1 = MARGIN_L, WIDTH - MARGIN_R
        self.y0, self.y1 = HEIGHT - MARGIN_B, MARGIN_T

    def x(self, slot: float) -> float:
        frac = (slot + 0.5) / self.n_slots
        return self.x0 + frac * (self.x1 - self.x0)

    def y(self, value: float) -> float:
        v = math.log10(value) if self.log_y else value
        frac = (v - self.y_lo) / (self.y_hi - self.y_lo)
        return self.y0 + frac * (self.y1 - self.y0)

    def y_ticks(self) -> list[tuple[float, str]]:
        if self.log_y:
            lo, hi = math.ceil(self.y_lo), math.floor(self.y_hi)
            decades = range(lo, hi + 1)
            step = max(1, (len(range(lo, hi + 1)) + 5) // 6)
            return [(10.0**d, _tick_label(10.0**d)) for d in decades if (d - lo) % step == 0]
        return [(t, _tick_label(t)) for t in _linear_ticks(self.y_lo, self.y_hi)]


def _chart_header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" {FONT} font-size="13" text-anchor="middle">'
        f"{_esc(title)}</text>",
    ]


def _axes(frame: _Frame, x_label: str, y_label: str) -> list[str]:
    parts = [
        f'<rect x="{frame.x0}" y="{frame.y1}" width="{frame.x1 - frame.x0}" '
        f'height="{frame.y0 - frame.y1}" fill="none" stroke="#333" stroke-width="1"/>'
    ]
    for value, label in frame.y_ticks():
        y = frame.y(value)
        if not frame.y1 <= y <= frame.y0:
            continue
        parts.append(
            f'<line x1="{frame.x0}" y1="{_fmt(y)}" x2="{frame.x1}" y2="{_fmt(y)}" '
            f'stroke="#ddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{frame.x0 - 6}" y="{_fmt(y + 4)}" {FONT} font-size="10" '
            f'text-anchor="end">{_esc(label)}</text>'
        )
    parts.append(
        f'<text x="{(frame.x0 + frame.x1) / 2:.0f}" y="{HEIGHT - 12}" {FONT} '
        f'font-size="11" text-anchor="middle">{_esc(x_label)}</text>'
    )
    parts.append(
        f'<text x="18" y="{(frame.y0 + frame.y1) / 2:.0f}" {FONT} font-size="11" '
        f'text-anchor="middle" transform="rotate(-90 18 {(frame.y0 + frame.y1) / 2:.0f})">'
        f"{_esc(y_label)}</text>"
    )
    return parts


def _x_tick_labels(frame: _Frame, labels: Sequence[str]) -> list[str]:
    parts = []
    stride = max(1, len(labels) // 12)
    for i, label in enumerate(labels):
        if i % stride:
            continue
        x = frame.x(i)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{frame.y0}" x2="{_fmt(x)}" y2="{frame.y0 + 4}" '
            f'stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{frame.y0 + 16}" {FONT} font-size="10" '
            f'text-anchor="middle">{_esc(label)}</text>'
        )
    return parts


def _legend(names: Sequence[str]) -> list[str]:
    parts = []
    x = WIDTH - MARGIN_R - 8
    y = MARGIN_T + 6
    for i, name in enumerate(names):
        color = PALETTE[i % len(PALETTE)]
        yy = y + 14 * i
        parts.append(
            f'<line x1="{x - 110}" y1="{yy}" x2="{x - 86}" y2="{yy}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{x - 80}" y="{yy + 4}" {FONT} font-size="10">{_esc(name)}</text>'
        )
    return parts


def _plottable(values, log_y: bool) -> list[float]:
    out = []
    for v in values:
        if v is None or not math.isfinite(v):
            continue
        if log_y and v <= 0:
            continue
        out.append(v)
    return out


def line_chart(
    title: str,
    x_label: str,
    y_label: str,
    x_tick_labels: Sequence[str],
    series: Sequence[tuple[str, Sequence[float]]],
    log_y: bool = False,
) -> str:
    """Category-positioned line chart; NaN (or nonpositive-under-log) points
    break the line rather than plotting."""
    flat = [v for _, values in series for v in _plottable(values, log_y)]
    if log_y and not flat:
        log_y = False
        flat = [v for _, values in series for v in _plottable(values, False)]
    if not flat:
        flat = [0.0, 1.0]
    frame = _Frame(min(flat), max(flat), max(len(x_tick_labels), 1), log_y)

    parts = _chart_header(title)
    parts += _axes(frame, x_label, y_label)
    parts += _x_tick_labels(frame, x_tick_labels)
    for i, (name, values) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        segment: list[str] = []
        segments = [segment]
        for slot, v in enumerate(values):
            ok = v is not None and math.isfinite(v) and not (log_y and v <= 0)
            if not ok:
                segment = []
                segments.append(segment)
                continue
            segment.append(f"{_fmt(frame.x(slot))},{_fmt(frame.y(v))}")
        for seg in segments:
            if len(seg) >= 2:
                parts.append(
                    f'<polyline points="{" ".join(seg)}" fill="none" '
                    f'stroke="{color}" stroke-width="2"/>'
                )
            elif len(seg) == 1:
                cx, cy = seg[0].split(",")
                parts.append(f'<circle cx="{cx}" cy="{cy}" r="2.5" fill="{color}"/>')
    parts += _legend([name for name, _ in series])
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def box_chart(
    title: str,
    y_label: str,
    items: Sequence[tuple[str, BoxplotStats]],
    log_y: bool = False,
) -> str:
    """One box-and-whiskers per item, outliers as open circles."""
    lows, highs = [], []
    for _, st in items:
        pts = [st.whisker_low, st.whisker_high, *st.outliers.tolist()]
        lows.append(min(pts))
        highs.append(max(pts))
    lo, hi = min(lows), max(highs)
    if log_y and lo <= 0:
        log_y = False  # log axis cannot hold nonpositive whiskers
    frame = _Frame(lo, hi, len(items), log_y)

    parts = _chart_header(title)
    parts += _axes(frame, "", y_label)
    parts += _x_tick_labels(frame, [name for name, _ in items])
    half = 0.22 * (frame.x1 - frame.x0) / frame.n_slots
    for i, (_, st) in enumerate(items):
        color = PALETTE[i % len(PALETTE)]
        cx = frame.x(i)
        yq1, ymed, yq3 = frame.y(st.q1), frame.y(st.median), frame.y(st.q3)
        ylo, yhi = frame.y(st.whisker_low), frame.y(st.whisker_high)
        parts.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(ylo)}" x2="{_fmt(cx)}" y2="{_fmt(yq1)}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(yq3)}" x2="{_fmt(cx)}" y2="{_fmt(yhi)}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        for wy in (ylo, yhi):
            parts.append(
                f'<line x1="{_fmt(cx - half / 2)}" y1="{_fmt(wy)}" '
                f'x2="{_fmt(cx + half / 2)}" y2="{_fmt(wy)}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
        parts.append(
            f'<rect x="{_fmt(cx - half)}" y="{_fmt(yq3)}" width="{_fmt(2 * half)}" '
            f'height="{_fmt(yq1 - yq3)}" fill="{color}" fill-opacity="0.25" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<line x1="{_fmt(cx - half)}" y1="{_fmt(ymed)}" x2="{_fmt(cx + half)}" '
            f'y2="{_fmt(ymed)}" stroke="{color}" stroke-width="2"/>'
        )
        for v in st.outliers.tolist():
            if log_y and v <= 0:
                continue
            parts.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(frame.y(v))}" r="2" '
                f'fill="none" stroke="{color}" stroke-width="0.8"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
