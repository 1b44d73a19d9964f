"""Minimal SVG emission: axes plus scatter points and polylines.

CSV files are always the ground truth; these plots exist so runs can be
eyeballed without any plotting dependency.
"""

_W, _H, _PAD = 640, 420, 50


def _scale(vals, lo, hi, out_lo, out_hi):
    span = hi - lo if hi > lo else 1.0
    return [out_lo + (v - lo) / span * (out_hi - out_lo) for v in vals]


def render(series, title="", x_label="", y_label=""):
    """series: list of dicts {x: [...], y: [...], label: str, kind: 'scatter'|'line'}."""
    xs = [v for s in series for v in s["x"]]
    ys = [v for s in series for v in s["y"]]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="monospace" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_PAD}" y1="{_H - _PAD}" x2="{_W - _PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f'<line x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f'<text x="{_W // 2}" y="20" text-anchor="middle">{title}</text>',
        f'<text x="{_W // 2}" y="{_H - 12}" text-anchor="middle">{x_label}</text>',
        f'<text x="16" y="{_H // 2}" text-anchor="middle" transform="rotate(-90 16 {_H // 2})">{y_label}</text>',
        f'<text x="{_PAD}" y="{_H - _PAD + 16}" text-anchor="middle">{x_lo:.3g}</text>',
        f'<text x="{_W - _PAD}" y="{_H - _PAD + 16}" text-anchor="middle">{x_hi:.3g}</text>',
        f'<text x="{_PAD - 6}" y="{_H - _PAD}" text-anchor="end">{y_lo:.3g}</text>',
        f'<text x="{_PAD - 6}" y="{_PAD + 4}" text-anchor="end">{y_hi:.3g}</text>',
    ]
    palette = ["#1f6fb2", "#c23b22", "#2d8a4a", "#8a5fbf", "#b2851f"]
    for i, s in enumerate(series):
        color = palette[i % len(palette)]
        px = _scale(s["x"], x_lo, x_hi, _PAD, _W - _PAD)
        py = _scale(s["y"], y_lo, y_hi, _H - _PAD, _PAD)
        if s.get("kind", "scatter") == "line":
            pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(px, py))
            parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        else:
            parts.extend(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}" fill-opacity="0.7"/>'
                for x, y in zip(px, py)
            )
        label = s.get("label")
        if label:
            parts.append(
                f'<text x="{_W - _PAD}" y="{_PAD + 14 * (i + 1)}" text-anchor="end" fill="{color}">{label}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
