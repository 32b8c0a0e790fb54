"""
Self-contained SVG rendering of a ROC curve.
"""

from html import escape
from pathlib import Path
from typing import List, Optional, Union

from xspec_eval.schema.metrics import RocCurve

MARGIN_LEFT = 70
MARGIN_RIGHT = 30
MARGIN_TOP = 40
MARGIN_BOTTOM = 60
TICKS = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]


def _coord(value: float) -> str:
    # Fixed precision keeps repeated renders byte-identical.
    return f"{value:.3f}"


def generate_roc_svg(
    r: RocCurve,
    title: str = "ROC",
    eer: Optional[float] = None,
    width: int = 800,
    height: int = 600,
) -> str:
    """
    Render GAR over FAR as a polyline on a [0, 1] x [0, 1] plot.

    The chance diagonal is dashed; when eer is given, the point (EER, 1 - EER)
    is marked.
    """
    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM

    def x(far: float) -> str:
        return _coord(MARGIN_LEFT + far * plot_w)

    def y(gar: float) -> str:
        return _coord(MARGIN_TOP + (1.0 - gar) * plot_h)

    lines: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'  <rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'  <text x="{_coord(width / 2)}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
    ]

    # Axes and ticks
    lines.append(
        f'  <rect x="{x(0)}" y="{y(1)}" width="{_coord(plot_w)}" height="{_coord(plot_h)}" '
        f'fill="none" stroke="black"/>'
    )
    for tick in TICKS:
        label = f"{tick:.1f}"
        lines.append(f'  <line x1="{x(tick)}" y1="{y(0)}" x2="{x(tick)}" y2="{_coord(MARGIN_TOP + plot_h + 6)}" stroke="black"/>')
        lines.append(
            f'  <text x="{x(tick)}" y="{_coord(MARGIN_TOP + plot_h + 22)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{label}</text>'
        )
        lines.append(f'  <line x1="{_coord(MARGIN_LEFT - 6)}" y1="{y(tick)}" x2="{x(0)}" y2="{y(tick)}" stroke="black"/>')
        lines.append(
            f'  <text x="{_coord(MARGIN_LEFT - 10)}" y="{_coord(float(y(tick)) + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{label}</text>'
        )
    lines.append(
        f'  <text x="{_coord(MARGIN_LEFT + plot_w / 2)}" y="{_coord(height - 15)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">FAR</text>'
    )
    lines.append(
        f'  <text x="20" y="{_coord(MARGIN_TOP + plot_h / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 20 {_coord(MARGIN_TOP + plot_h / 2)})">GAR</text>'
    )

    lines.append(
        f'  <line x1="{x(0)}" y1="{y(0)}" x2="{x(1)}" y2="{y(1)}" stroke="gray" stroke-dasharray="6,4"/>'
    )

    points = " ".join(f"{x(p.far)},{y(p.gar)}" for p in r.points)
    lines.append(f'  <polyline points="{points}" fill="none" stroke="#1f77b4" stroke-width="2"/>')

    if eer is not None:
        lines.append(f'  <circle cx="{x(eer)}" cy="{y(1.0 - eer)}" r="5" fill="#d62728"/>')
        lines.append(
            f'  <text x="{_coord(float(x(eer)) + 10)}" y="{_coord(float(y(1.0 - eer)) + 16)}" '
            f'font-family="sans-serif" font-size="12">EER {eer:.4f}</text>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_roc_svg(svg: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(svg, encoding="utf-8")
    return path
