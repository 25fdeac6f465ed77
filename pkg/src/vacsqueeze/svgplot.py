"""Minimal deterministic SVG emission: heatmaps, line traces, spectrum panels.

No plotting dependency; output contains no timestamps or metadata, so a rerun
with identical inputs is byte-identical.
"""

from __future__ import annotations

import numpy as np

# Compact perceptual-ish colormap anchors (dark blue -> teal -> yellow).
_ANCHORS = np.array(
    [
        (68, 1, 84),
        (59, 82, 139),
        (33, 145, 140),
        (94, 201, 98),
        (253, 231, 37),
    ],
    dtype=float,
)


def _fmt(x: float) -> str:
    return format(float(x), ".6g")


def _color(v: float) -> str:
    v = min(max(v, 0.0), 1.0)
    pos = v * (len(_ANCHORS) - 1)
    i = min(int(pos), len(_ANCHORS) - 2)
    frac = pos - i
    rgb = (1 - frac) * _ANCHORS[i] + frac * _ANCHORS[i + 1]
    return "#{:02x}{:02x}{:02x}".format(*(int(round(c)) for c in rgb))


def heatmap_svg(values: np.ndarray, title: str = "", size: int = 360) -> str:
    """Pixel-rectangle heatmap of a 2-D array (row 0 at the bottom)."""
    v = np.asarray(values, dtype=float)
    vmax = float(v.max()) if v.size else 1.0
    norm = v / vmax if vmax > 0 else v
    ny, nx = norm.shape
    cell_w = size / nx
    cell_h = size / ny
    top = 24 if title else 4
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 8}" '
        f'height="{size + top + 8}" viewBox="0 0 {size + 8} {size + top + 8}">'
    ]
    if title:
        parts.append(
            f'<text x="{(size + 8) / 2}" y="16" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{title}</text>'
        )
    for i in range(ny):
        y = top + size - (i + 1) * cell_h
        for j in range(nx):
            parts.append(
                f'<rect x="{_fmt(4 + j * cell_w)}" y="{_fmt(y)}" '
                f'width="{_fmt(cell_w + 0.5)}" height="{_fmt(cell_h + 0.5)}" '
                f'fill="{_color(norm[i, j])}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def line_plot_svg(
    x,
    series: dict[str, np.ndarray],
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    width: int = 560,
    height: int = 330,
) -> str:
    """Polyline plot of one or more named series against a shared x axis."""
    x = np.asarray(x, dtype=float)
    all_y = np.concatenate([np.asarray(v, dtype=float) for v in series.values()])
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = float(all_y.min()), float(all_y.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    left, right, top, bottom = 60, 16, 30, 46

    def sx(v):
        return left + (v - x0) / (x1 - x0) * (width - left - right)

    def sy(v):
        return top + (y1 - v) / (y1 - y0) * (height - top - bottom)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{width - left - right}" '
        f'height="{height - top - bottom}" fill="none" stroke="#333"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{title}</text>'
        )
    for k in range(5):
        xv = x0 + k * (x1 - x0) / 4
        yv = y0 + k * (y1 - y0) / 4
        parts.append(
            f'<text x="{_fmt(sx(xv))}" y="{height - bottom + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{_fmt(xv)}</text>'
        )
        parts.append(
            f'<text x="{left - 6}" y="{_fmt(sy(yv) + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{_fmt(yv)}</text>'
        )
    if x_label:
        parts.append(
            f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{x_label}</text>'
        )
    if y_label:
        parts.append(
            f'<text x="14" y="{height / 2}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="11" transform="rotate(-90 14 {height / 2})">{y_label}</text>'
        )
    for idx, (name, ys) in enumerate(series.items()):
        ys = np.asarray(ys, dtype=float)
        pts = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in zip(x, ys))
        color = colors[idx % len(colors)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        parts.append(
            f'<text x="{width - right - 4}" y="{top + 16 + 14 * idx}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def spectrum_panels_svg(
    frequencies,
    excess_counts,
    predicted_counts,
    amplitudes,
    verdict: str = "",
    width: int = 560,
) -> str:
    """Two stacked panels: excess-count histogram vs fluctuation amplitudes."""
    freqs = np.asarray(frequencies, dtype=float)
    excess = np.asarray(excess_counts, dtype=float)
    predicted = np.asarray(predicted_counts, dtype=float)
    amps = np.asarray(amplitudes, dtype=float)
    panel_h = 240
    height = 2 * panel_h + 30
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if verdict:
        parts.append(
            f'<text x="{width / 2}" y="18" text-anchor="middle" font-family="sans-serif" '
            f'font-size="14">verdict: {verdict}</text>'
        )

    left, right = 60, 16
    plot_w = width - left - right
    bar_w = plot_w / freqs.size

    def panel(y_top, values, overlay, label, color):
        vmax = max(float(np.max(values)) if values.size else 1.0, 1e-12)
        if overlay is not None:
            vmax = max(vmax, float(np.max(overlay)))
        vmax *= 1.05
        h = panel_h - 60
        parts.append(
            f'<rect x="{left}" y="{y_top}" width="{plot_w}" height="{h}" '
            f'fill="none" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{left}" y="{y_top - 6}" font-family="sans-serif" font-size="12">{label}</text>'
        )
        for j, v in enumerate(values):
            bh = max(v, 0.0) / vmax * h
            parts.append(
                f'<rect x="{_fmt(left + j * bar_w + 1)}" y="{_fmt(y_top + h - bh)}" '
                f'width="{_fmt(max(bar_w - 2, 1))}" height="{_fmt(bh)}" fill="{color}"/>'
            )
        if overlay is not None:
            pts = " ".join(
                f"{_fmt(left + (j + 0.5) * bar_w)},{_fmt(y_top + h - max(v, 0.0) / vmax * h)}"
                for j, v in enumerate(overlay)
            )
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="#111" '
                f'stroke-width="1.5" stroke-dasharray="4 3"/>'
            )
        parts.append(
            f'<text x="{left}" y="{y_top + h + 16}" font-family="sans-serif" '
            f'font-size="10">{_fmt(freqs[0])}</text>'
        )
        parts.append(
            f'<text x="{left + plot_w}" y="{y_top + h + 16}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{_fmt(freqs[-1])}</text>'
        )

    panel(44, excess, predicted, "excess photon counts per shot (dashed: predicted from fluctuations)", "#4878cf")
    panel(panel_h + 44, amps - 0.5, None, "fluctuation amplitude A(omega) above the vacuum floor 1/2", "#d65f5f")
    parts.append("</svg>")
    return "\n".join(parts)
