"""Minimal deterministic SVG line plots for scaling curves.

Hand-rolled so identical input yields byte-identical output; no timestamps,
ids, or library version strings end up in the document.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

log = logging.getLogger(__name__)

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

WIDTH, HEIGHT = 640, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 30, 50


class PlotError(ValueError):
    """Nothing to plot."""


@dataclass(frozen=True)
class AxesSpec:
    x_label: str
    y_label: str
    log_x: bool = False
    log_y: bool = False
    title: str = ""


@dataclass(frozen=True)
class Series:
    label: str
    points: list[tuple[float, float]]


def _clamped(values: list[float], log_scale: bool, axis: str) -> list[float]:
    if not log_scale:
        return values
    positive = [v for v in values if v > 0]
    floor = min(positive) if positive else 1.0
    out = []
    for v in values:
        if v <= 0:
            log.warning("clamping nonpositive %s value %r to %r on log axis", axis, v, floor)
            out.append(floor)
        else:
            out.append(v)
    return out


def _scale(values: list[float], log_scale: bool) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if log_scale:
        lo, hi = math.log10(lo), math.log10(hi)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def _ticks(lo: float, hi: float, log_scale: bool) -> list[float]:
    if log_scale:
        return [float(t) for t in range(math.floor(lo), math.ceil(hi) + 1)]
    step = (hi - lo) / 4.0
    return [lo + k * step for k in range(5)]


def emit_svg(series: list[Series], axes: AxesSpec) -> str:
    if not series or all(not s.points for s in series):
        raise PlotError("empty plot input")
    xs, ys = [], []
    cleaned: list[Series] = []
    for s in series:
        if not s.points:
            continue
        px = _clamped([p[0] for p in s.points], axes.log_x, "x")
        py = _clamped([p[1] for p in s.points], axes.log_y, "y")
        cleaned.append(Series(s.label, list(zip(px, py))))
        xs.extend(px)
        ys.extend(py)
    x_lo, x_hi = _scale(xs, axes.log_x)
    y_lo, y_hi = _scale(ys, axes.log_y)

    def to_px(x: float, y: float) -> tuple[float, float]:
        tx = math.log10(x) if axes.log_x else x
        ty = math.log10(y) if axes.log_y else y
        fx = (tx - x_lo) / (x_hi - x_lo)
        fy = (ty - y_lo) / (y_hi - y_lo)
        return (
            MARGIN_L + fx * (WIDTH - MARGIN_L - MARGIN_R),
            HEIGHT - MARGIN_B - fy * (HEIGHT - MARGIN_T - MARGIN_B),
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" x2="{WIDTH - MARGIN_R}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
    ]
    if axes.title:
        parts.append(
            f'<text x="{WIDTH // 2}" y="20" text-anchor="middle" '
            f'font-size="14">{axes.title}</text>'
        )
    for t in _ticks(x_lo, x_hi, axes.log_x):
        value = 10.0**t if axes.log_x else t
        px, _ = to_px(value, 10.0**y_lo if axes.log_y else y_lo)
        label = f"1e{int(t)}" if axes.log_x else f"{value:.3g}"
        parts.append(
            f'<line x1="{px:.2f}" y1="{HEIGHT - MARGIN_B}" x2="{px:.2f}" '
            f'y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{HEIGHT - MARGIN_B + 18}" text-anchor="middle" '
            f'font-size="11">{label}</text>'
        )
    for t in _ticks(y_lo, y_hi, axes.log_y):
        value = 10.0**t if axes.log_y else t
        _, py = to_px(10.0**x_lo if axes.log_x else x_lo, value)
        label = f"1e{int(t)}" if axes.log_y else f"{value:.3g}"
        parts.append(
            f'<line x1="{MARGIN_L - 5}" y1="{py:.2f}" x2="{MARGIN_L}" '
            f'y2="{py:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-size="11">{label}</text>'
        )
    parts.append(
        f'<text x="{(MARGIN_L + WIDTH - MARGIN_R) // 2}" y="{HEIGHT - 12}" '
        f'text-anchor="middle" font-size="12">{axes.x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{(MARGIN_T + HEIGHT - MARGIN_B) // 2}" text-anchor="middle" '
        f'font-size="12" transform="rotate(-90 16 {(MARGIN_T + HEIGHT - MARGIN_B) // 2})">'
        f"{axes.y_label}</text>"
    )
    for idx, s in enumerate(cleaned):
        color = PALETTE[idx % len(PALETTE)]
        pts = [to_px(x, y) for x, y in s.points]
        if len(pts) > 1:
            path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            parts.append(
                f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        for x, y in pts:
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
        parts.append(
            f'<text x="{WIDTH - MARGIN_R - 6}" y="{MARGIN_T + 16 * (idx + 1)}" '
            f'text-anchor="end" font-size="11" fill="{color}">{s.label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
