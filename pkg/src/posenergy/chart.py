"""Log-log SVG rendering for consumption bands, markers and reference bands.

The chart is hand-rolled SVG rather than a plotting-library figure: shaded
polygons for bands (one per contiguous physical run), horizontal reference
bands, point markers, decade gridlines and a legend. The pixel mapping is
exposed through :class:`ChartGeometry` so callers can verify coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .estimator import BandPoint, ConsumptionBand

DEFAULT_WIDTH = 1200
DEFAULT_HEIGHT = 800

_MARGIN_LEFT = 80.0
_MARGIN_RIGHT = 40.0
_MARGIN_TOP = 40.0
_MARGIN_BOTTOM = 70.0

_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
    "#8c6d31", "#843c39", "#7b4173", "#3182bd",
)


@dataclass(frozen=True)
class PointMarker:
    """A single labelled point, e.g. a latest observation or the Visa figure."""

    label: str
    tps: float
    kwh_per_tx: float


@dataclass(frozen=True)
class ReferenceBand:
    """A horizontal band spanning the whole throughput axis (Bitcoin bounds)."""

    label: str
    kwh_per_tx_lower: float
    kwh_per_tx_upper: float


@dataclass(frozen=True)
class ChartGeometry:
    """Log-log mapping from data coordinates to SVG pixel coordinates."""

    width: int
    height: int
    x_log_min: float
    x_log_max: float
    y_log_min: float
    y_log_max: float

    @property
    def plot_left(self) -> float:
        return _MARGIN_LEFT

    @property
    def plot_right(self) -> float:
        return self.width - _MARGIN_RIGHT

    @property
    def plot_top(self) -> float:
        return _MARGIN_TOP

    @property
    def plot_bottom(self) -> float:
        return self.height - _MARGIN_BOTTOM

    def x_px(self, tps: float) -> float:
        span = self.x_log_max - self.x_log_min
        frac = (math.log10(tps) - self.x_log_min) / span
        return self.plot_left + frac * (self.plot_right - self.plot_left)

    def y_px(self, kwh_per_tx: float) -> float:
        span = self.y_log_max - self.y_log_min
        frac = (self.y_log_max - math.log10(kwh_per_tx)) / span
        return self.plot_top + frac * (self.plot_bottom - self.plot_top)


def chart_geometry(
    bands: Sequence[ConsumptionBand],
    markers: Sequence[PointMarker] = (),
    reference_bands: Sequence[ReferenceBand] = (),
    width: int = DEFAULT_WIDTH,
    height: int = DEFAULT_HEIGHT,
) -> ChartGeometry:
    """Decade-rounded axis ranges covering every plottable value."""
    xs = [p.tps for band in bands for p in band.points if p.physical]
    xs += [m.tps for m in markers]
    ys = [v for band in bands for p in band.points if p.physical
          for v in (p.kwh_per_tx_lower, p.kwh_per_tx_upper)]
    ys += [m.kwh_per_tx for m in markers]
    ys += [v for r in reference_bands for v in (r.kwh_per_tx_lower, r.kwh_per_tx_upper)]
    xs = [x for x in xs if x > 0]
    ys = [y for y in ys if y > 0]
    if not xs or not ys:
        raise ValueError("nothing to plot: no physical points in range")
    x_log_min = math.floor(math.log10(min(xs)))
    x_log_max = math.ceil(math.log10(max(xs)))
    y_log_min = math.floor(math.log10(min(ys)))
    y_log_max = math.ceil(math.log10(max(ys)))
    if x_log_min == x_log_max:
        x_log_max += 1
    if y_log_min == y_log_max:
        y_log_max += 1
    return ChartGeometry(width, height, float(x_log_min), float(x_log_max),
                         float(y_log_min), float(y_log_max))


def _physical_runs(points: Iterable[BandPoint]) -> list[list[BandPoint]]:
    runs: list[list[BandPoint]] = []
    current: list[BandPoint] = []
    for point in points:
        if point.physical:
            current.append(point)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_chart(
    bands: Sequence[ConsumptionBand],
    markers: Sequence[PointMarker] = (),
    reference_bands: Sequence[ReferenceBand] = (),
    width: int = DEFAULT_WIDTH,
    height: int = DEFAULT_HEIGHT,
    title: str = "",
) -> tuple[str, ChartGeometry]:
    """Render an SVG document; returns the markup and the geometry used.

    Band polygons walk the lower edge left to right, then the upper edge
    back, per contiguous physical run. Non-physical points are not drawn.
    """
    geom = chart_geometry(bands, markers, reference_bands, width, height)
    colors = _color_map(bands, markers, reference_bands)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    parts.extend(_grid_lines(geom))

    for ref in reference_bands:
        top = geom.y_px(ref.kwh_per_tx_upper)
        bottom = geom.y_px(ref.kwh_per_tx_lower)
        parts.append(
            f'<rect x="{_fmt(geom.plot_left)}" y="{_fmt(top)}" '
            f'width="{_fmt(geom.plot_right - geom.plot_left)}" '
            f'height="{_fmt(bottom - top)}" fill="{colors[ref.label]}" '
            f'fill-opacity="0.25" stroke="{colors[ref.label]}"/>'
        )

    for band in bands:
        color = colors[band.network]
        for run in _physical_runs(band.points):
            if len(run) < 2:
                continue
            forward = [(geom.x_px(p.tps), geom.y_px(p.kwh_per_tx_lower)) for p in run]
            backward = [(geom.x_px(p.tps), geom.y_px(p.kwh_per_tx_upper)) for p in reversed(run)]
            coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in forward + backward)
            parts.append(
                f'<polygon points="{coords}" fill="{color}" fill-opacity="0.35" '
                f'stroke="{color}" stroke-width="1"/>'
            )

    for marker in markers:
        parts.append(
            f'<circle cx="{_fmt(geom.x_px(marker.tps))}" cy="{_fmt(geom.y_px(marker.kwh_per_tx))}" '
            f'r="4" fill="{colors[marker.label]}" stroke="#333333"/>'
        )

    parts.extend(_frame_and_labels(geom, title))
    parts.extend(_legend(geom, colors))
    parts.append("</svg>")
    return "\n".join(parts) + "\n", geom


def _color_map(
    bands: Sequence[ConsumptionBand],
    markers: Sequence[PointMarker],
    reference_bands: Sequence[ReferenceBand],
) -> dict[str, str]:
    labels = sorted({b.network for b in bands})
    labels += sorted({m.label for m in markers} - set(labels))
    labels += sorted({r.label for r in reference_bands} - set(labels))
    return {label: _PALETTE[i % len(_PALETTE)] for i, label in enumerate(labels)}


def _grid_lines(geom: ChartGeometry) -> list[str]:
    parts = []
    for exponent in range(int(geom.x_log_min), int(geom.x_log_max) + 1):
        x = geom.x_px(10.0 ** exponent)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(geom.plot_top)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(geom.plot_bottom)}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(geom.plot_bottom + 20)}" '
            f'font-size="12" text-anchor="middle" fill="#333333">1e{exponent}</text>'
        )
    for exponent in range(int(geom.y_log_min), int(geom.y_log_max) + 1):
        y = geom.y_px(10.0 ** exponent)
        parts.append(
            f'<line x1="{_fmt(geom.plot_left)}" y1="{_fmt(y)}" x2="{_fmt(geom.plot_right)}" '
            f'y2="{_fmt(y)}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{_fmt(geom.plot_left - 8)}" y="{_fmt(y + 4)}" '
            f'font-size="12" text-anchor="end" fill="#333333">1e{exponent}</text>'
        )
    return parts


def _frame_and_labels(geom: ChartGeometry, title: str) -> list[str]:
    mid_x = (geom.plot_left + geom.plot_right) / 2
    mid_y = (geom.plot_top + geom.plot_bottom) / 2
    parts = [
        f'<rect x="{_fmt(geom.plot_left)}" y="{_fmt(geom.plot_top)}" '
        f'width="{_fmt(geom.plot_right - geom.plot_left)}" '
        f'height="{_fmt(geom.plot_bottom - geom.plot_top)}" '
        f'fill="none" stroke="#333333"/>',
        f'<text x="{_fmt(mid_x)}" y="{_fmt(geom.plot_bottom + 45)}" font-size="14" '
        f'text-anchor="middle" fill="#111111">throughput (tx/s)</text>',
        f'<text x="20" y="{_fmt(mid_y)}" font-size="14" text-anchor="middle" '
        f'fill="#111111" transform="rotate(-90 20 {_fmt(mid_y)})">'
        f'energy per transaction (kWh/tx)</text>',
    ]
    if title:
        parts.append(
            f'<text x="{_fmt(mid_x)}" y="24" font-size="16" text-anchor="middle" '
            f'fill="#111111">{title}</text>'
        )
    return parts


def _legend(geom: ChartGeometry, colors: dict[str, str]) -> list[str]:
    parts = []
    x = geom.plot_right - 170
    y = geom.plot_top + 10
    for label in colors:
        parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y - 9)}" width="12" height="12" '
            f'fill="{colors[label]}" fill-opacity="0.7"/>'
        )
        parts.append(
            f'<text x="{_fmt(x + 18)}" y="{_fmt(y + 2)}" font-size="12" '
            f'fill="#111111">{label}</text>'
        )
        y += 18
    return parts
