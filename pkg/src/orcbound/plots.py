"""Self-contained static SVG plots: agreement scatter and paired histogram.

No plotting library, no scripts inside the SVG; output is deterministic for
identical inputs, which keeps plot files diffable across runs.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

WIDTH, HEIGHT = 640, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 20, 36, 56


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _svg_header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
    ]


def _axes(parts: list[str], x_lo, x_hi, y_lo, y_hi, xlabel, ylabel):
    px = lambda x: MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_L - MARGIN_R)
    py = lambda y: HEIGHT - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)
    parts.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{WIDTH - MARGIN_L - MARGIN_R}" '
        f'height="{HEIGHT - MARGIN_T - MARGIN_B}" fill="none" stroke="black"/>'
    )
    for t in _ticks(x_lo, x_hi):
        x = px(t)
        parts.append(f'<line x1="{x:.1f}" y1="{HEIGHT - MARGIN_B}" x2="{x:.1f}" y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>')
        parts.append(f'<text x="{x:.1f}" y="{HEIGHT - MARGIN_B + 18}" text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(y_lo, y_hi):
        y = py(t)
        parts.append(f'<line x1="{MARGIN_L - 5}" y1="{y:.1f}" x2="{MARGIN_L}" y2="{y:.1f}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN_L - 8}" y="{y + 4:.1f}" text-anchor="end">{t:.3g}</text>')
    parts.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 14}" text-anchor="middle">{xlabel}</text>')
    parts.append(
        f'<text x="16" y="{HEIGHT / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {HEIGHT / 2})">{ylabel}</text>'
    )
    return px, py


def scatter_svg(
    xs: Sequence[float],
    ys: Sequence[float],
    xlabel: str,
    ylabel: str,
    title: str,
    trend: tuple[float, float] | None = None,
) -> str:
    """Scatter with a dashed identity line and an optional (slope, intercept) trend line."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("scatter needs equally many x and y values, at least one pair")
    lo = min(min(xs), min(ys))
    hi = max(max(xs), max(ys))
    pad = 0.05 * (hi - lo) if hi > lo else 0.5
    lo, hi = lo - pad, hi + pad
    parts = _svg_header(title)
    px, py = _axes(parts, lo, hi, lo, hi, xlabel, ylabel)
    parts.append(
        f'<line x1="{px(lo):.1f}" y1="{py(lo):.1f}" x2="{px(hi):.1f}" y2="{py(hi):.1f}" '
        f'stroke="black" stroke-dasharray="6 4"/>'
    )
    if trend is not None:
        slope, intercept = trend
        parts.append(
            f'<line x1="{px(lo):.1f}" y1="{py(slope * lo + intercept):.1f}" '
            f'x2="{px(hi):.1f}" y2="{py(slope * hi + intercept):.1f}" stroke="crimson"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN_R - 6}" y="{MARGIN_T + 16}" text-anchor="end" '
            f'fill="crimson">OLS trend: y = {slope:.3f}x + {intercept:.3f}</text>'
        )
    for x, y in zip(xs, ys):
        parts.append(f'<circle cx="{px(x):.1f}" cy="{py(y):.1f}" r="3" fill="steelblue" fill-opacity="0.6"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def dual_histogram_svg(
    bin_edges: Sequence[float],
    counts_a: Sequence[int],
    counts_b: Sequence[int],
    label_a: str,
    label_b: str,
    xlabel: str,
    title: str,
) -> str:
    """Two overlaid count histograms on shared bins."""
    if len(bin_edges) < 2 or len(counts_a) != len(bin_edges) - 1 or len(counts_b) != len(bin_edges) - 1:
        raise ValueError("need k+1 bin edges for k counts in both series")
    x_lo, x_hi = bin_edges[0], bin_edges[-1]
    y_hi = max(1, max(counts_a), max(counts_b)) * 1.05
    parts = _svg_header(title)
    px, py = _axes(parts, x_lo, x_hi, 0.0, y_hi, xlabel, "count")
    y0 = py(0.0)
    for counts, color in ((counts_a, "steelblue"), (counts_b, "crimson")):
        for k, c in enumerate(counts):
            if c == 0:
                continue
            x1, x2 = px(bin_edges[k]), px(bin_edges[k + 1])
            yt = py(c)
            parts.append(
                f'<rect x="{x1:.1f}" y="{yt:.1f}" width="{x2 - x1:.1f}" height="{y0 - yt:.1f}" '
                f'fill="{color}" fill-opacity="0.5" stroke="{color}"/>'
            )
    parts.append(
        f'<rect x="{WIDTH - MARGIN_R - 150}" y="{MARGIN_T + 6}" width="12" height="12" fill="steelblue" fill-opacity="0.5"/>'
        f'<text x="{WIDTH - MARGIN_R - 132}" y="{MARGIN_T + 16}">{label_a}</text>'
    )
    parts.append(
        f'<rect x="{WIDTH - MARGIN_R - 150}" y="{MARGIN_T + 24}" width="12" height="12" fill="crimson" fill-opacity="0.5"/>'
        f'<text x="{WIDTH - MARGIN_R - 132}" y="{MARGIN_T + 34}">{label_b}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(svg: str, path: str | Path) -> None:
    Path(path).write_text(svg, encoding="utf-8")
