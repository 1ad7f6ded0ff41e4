"""Report rows, CSV emission and grouped-bar SVG charts for the bound comparisons."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .bounds import BoundReport, full_report
from .states import SIGMA_X_OBS, SIGMA_Y_OBS, SIGMA_Z_OBS, DensityMatrix, bell_diagonal, classical_state, mixed_marginal, werner

CSV_HEADER = "param,L0,L1,L2,L3,L4,LHS_ent,LHS_fano"
BOUND_NAMES = ("L0", "L1", "L2", "L3", "L4")
_QUANTUM = Decimal("0.000001")


def fmt6(x: float) -> str:
    """Six decimals, round-half-even on the exact binary value, no negative zero."""
    s = str(Decimal(float(x)).quantize(_QUANTUM, rounding=ROUND_HALF_EVEN))
    return "0.000000" if s == "-0.000000" else s


def report_values(r: BoundReport) -> list[float]:
    return [r.l0, r.l1, r.l2, r.l3, r.l4, r.lhs_entropic, r.lhs_fano]


def _csv_line(fields: Sequence[str]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(fields)
    return buf.getvalue()


def csv_row(param: str, r: BoundReport) -> str:
    """One CSV record without the trailing newline; labels with commas are quoted."""
    return _csv_line([param] + [fmt6(v) for v in report_values(r)])[:-1]


def render_csv(rows: Iterable[tuple[str, BoundReport]], args_line: str) -> str:
    lines = [f"# args: {args_line}", CSV_HEADER]
    lines += [csv_row(label, r) for label, r in rows]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FigureData:
    groups: tuple[tuple[str, BoundReport], ...]
    caption: str
    bars: tuple[str, ...]


def _group(label: str, state: DensityMatrix, obs_s) -> tuple[str, BoundReport]:
    return label, full_report(state, SIGMA_Z_OBS, obs_s, "B")


def figure_data(fig_id: int) -> FigureData:
    """Bar groups for figure 1 (three correlated states) or figure 2 (classical state).

    Settings are σ_z with σ_x, except the Bell-diagonal group which uses σ_z
    with σ_y, the pair under which that state is optimally predictable.
    """
    if fig_id == 1:
        groups = (
            _group("werner p=0.723", werner(0.723), SIGMA_X_OBS),
            _group("mm c=(0.5,-0.2,-0.3)", mixed_marginal(0.5, -0.2, -0.3), SIGMA_X_OBS),
            _group("bd p=0.5", bell_diagonal(0.5), SIGMA_Y_OBS),
        )
        return FigureData(groups, "Lower bounds for Werner, maximally-mixed-marginal and Bell-diagonal states", ("L1", "L2", "L3", "L4"))
    if fig_id == 2:
        groups = (_group("classical p=0.5", classical_state(0.5), SIGMA_X_OBS),)
        return FigureData(groups, "Lower bounds for the classical state p=0.5", BOUND_NAMES)
    raise ValueError(f"unknown figure id {fig_id}; use 1 or 2")


_COLORS = {"L0": "#7f7f7f", "L1": "#1f77b4", "L2": "#ff7f0e", "L3": "#2ca02c", "L4": "#d62728"}


def render_svg(fig: FigureData, width: int = 800, height: int = 500) -> str:
    """Self-contained SVG 1.1 grouped bar chart."""
    left, right, top, bottom = 70, 150, 50, 70
    plot_w = width - left - right
    plot_h = height - top - bottom
    values = [getattr(r, name.lower()) for _, r in fig.groups for name in fig.bars]
    ymax = max(0.5, math.ceil(max(values) * 2 + 1e-9) / 2)

    def y_of(v: float) -> float:
        return top + plot_h * (1 - max(v, 0.0) / ymax)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="25" text-anchor="middle" font-family="sans-serif" font-size="15">{escape(fig.caption)}</text>',
    ]
    ticks = int(round(ymax / 0.5))
    for k in range(ticks + 1):
        v = k * 0.5
        y = y_of(v)
        out.append(f'<line x1="{left}" y1="{y:.1f}" x2="{left + plot_w}" y2="{y:.1f}" stroke="#dddddd"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.1f}" text-anchor="end" font-family="sans-serif" font-size="12">{v:.1f}</text>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" stroke="black"/>')
    out.append(
        f'<text x="20" y="{top + plot_h / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {top + plot_h / 2:.1f})">lower bound (bits)</text>'
    )
    out.append(f'<text x="{left + plot_w / 2:.1f}" y="{height - 15}" text-anchor="middle" font-family="sans-serif" font-size="13">shared state</text>')

    group_w = plot_w / len(fig.groups)
    bar_w = group_w * 0.7 / len(fig.bars)
    for g, (label, report) in enumerate(fig.groups):
        x0 = left + g * group_w + group_w * 0.15
        for b, name in enumerate(fig.bars):
            v = getattr(report, name.lower())
            x = x0 + b * bar_w
            y = y_of(v)
            h = top + plot_h - y
            out.append(f'<rect x="{x:.1f}" y="{y:.1f}" width="{bar_w * 0.9:.1f}" height="{h:.1f}" fill="{_COLORS[name]}"><title>{name} = {fmt6(v)}</title></rect>')
            out.append(f'<text x="{x + bar_w * 0.45:.1f}" y="{y - 4:.1f}" text-anchor="middle" font-family="sans-serif" font-size="11">{v:.1f}</text>')
        out.append(f'<text x="{left + (g + 0.5) * group_w:.1f}" y="{top + plot_h + 20}" text-anchor="middle" font-family="sans-serif" font-size="12">{escape(label)}</text>')

    for b, name in enumerate(fig.bars):
        y = top + 10 + b * 22
        out.append(f'<rect x="{width - right + 20}" y="{y}" width="14" height="14" fill="{_COLORS[name]}"/>')
        out.append(f'<text x="{width - right + 40}" y="{y + 12}" font-family="sans-serif" font-size="13">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
