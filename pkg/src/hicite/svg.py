"""Self-contained SVG line charts. No rendering dependencies, deterministic
output, so chart files can be diffed byte-for-byte in tests."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

PALETTE = (
    "#1f6feb",
    "#d1242f",
    "#1a7f37",
    "#9a6700",
    "#8250df",
    "#bf3989",
    "#1b7c83",
    "#57606a",
)

MARGIN_LEFT = 64.0
MARGIN_RIGHT = 28.0
MARGIN_TOP = 44.0
PLOT_WIDTH = 720.0
PLOT_HEIGHT = 320.0
X_AXIS_SPACE = 52.0
LEGEND_ROW = 20.0

Series = Sequence[tuple[str, Sequence[tuple[float, float]]]]


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def line_chart(
    series: Series,
    *,
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    y_min: float = 0.0,
    y_max: float = 1.0,
) -> str:
    """Render labelled (x, y) series as an SVG line chart with markers,
    axes, and a legend row per series."""
    xs = [x for _, points in series for x, _ in points]
    x_lo, x_hi = (min(xs), max(xs)) if xs else (0.0, 1.0)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0

    width = MARGIN_LEFT + PLOT_WIDTH + MARGIN_RIGHT
    legend_top = MARGIN_TOP + PLOT_HEIGHT + X_AXIS_SPACE
    height = legend_top + LEGEND_ROW * len(series) + 16.0

    def sx(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * PLOT_WIDTH

    def sy(y: float) -> float:
        return MARGIN_TOP + (1.0 - (y - y_min) / (y_max - y_min)) * PLOT_HEIGHT

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}"'
        f' viewBox="0 0 {_fmt(width)} {_fmt(height)}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_fmt(MARGIN_LEFT + PLOT_WIDTH / 2)}" y="24" text-anchor="middle"'
            f' font-size="15">{escape(title)}</text>'
        )

    # horizontal gridlines and y tick labels, 5 divisions
    for step in range(6):
        y = y_min + (y_max - y_min) * step / 5
        py = sy(y)
        parts.append(
            f'<line x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(py)}" x2="{_fmt(MARGIN_LEFT + PLOT_WIDTH)}"'
            f' y2="{_fmt(py)}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{_fmt(MARGIN_LEFT - 8)}" y="{_fmt(py + 4)}" text-anchor="end">{y:.1f}</text>'
        )

    # integer x ticks across the data span
    tick = int(x_lo) if x_lo == int(x_lo) else int(x_lo) + 1
    ticks = []
    while tick <= x_hi:
        ticks.append(tick)
        tick += 1
    step = max(1, len(ticks) // 16)
    for tick in ticks[::step]:
        px = sx(tick)
        bottom = MARGIN_TOP + PLOT_HEIGHT
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(bottom)}" x2="{_fmt(px)}" y2="{_fmt(bottom + 5)}" stroke="#333333"/>'
        )
        parts.append(f'<text x="{_fmt(px)}" y="{_fmt(bottom + 20)}" text-anchor="middle">{tick}</text>')

    parts.append(
        f'<rect x="{_fmt(MARGIN_LEFT)}" y="{_fmt(MARGIN_TOP)}" width="{_fmt(PLOT_WIDTH)}"'
        f' height="{_fmt(PLOT_HEIGHT)}" fill="none" stroke="#333333"/>'
    )
    if x_label:
        parts.append(
            f'<text x="{_fmt(MARGIN_LEFT + PLOT_WIDTH / 2)}" y="{_fmt(MARGIN_TOP + PLOT_HEIGHT + 38)}"'
            f' text-anchor="middle">{escape(x_label)}</text>'
        )
    if y_label:
        cy = MARGIN_TOP + PLOT_HEIGHT / 2
        parts.append(
            f'<text x="16" y="{_fmt(cy)}" text-anchor="middle"'
            f' transform="rotate(-90 16 {_fmt(cy)})">{escape(y_label)}</text>'
        )

    for index, (label, points) in enumerate(series):
        color = PALETTE[index % len(PALETTE)]
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in points)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.8"/>')
        for x, y in points:
            parts.append(f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="3" fill="{color}"/>')
        row_y = legend_top + LEGEND_ROW * index
        parts.append(
            f'<line x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(row_y)}" x2="{_fmt(MARGIN_LEFT + 26)}"'
            f' y2="{_fmt(row_y)}" stroke="{color}" stroke-width="3"/>'
        )
        parts.append(f'<text x="{_fmt(MARGIN_LEFT + 34)}" y="{_fmt(row_y + 4)}">{escape(label)}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
