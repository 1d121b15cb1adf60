"""Static SVG trace plots, written by hand so the output is a pure function of the CSV."""

from __future__ import annotations

from .samplers import read_trace_csv

WIDTH = 800
HEIGHT = 420
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 60

SERIES = (("density", "#1f77b4"), ("best_density", "#d62728"))


def _xmap(it, lo, hi):
    span = max(hi - lo, 1)
    return LEFT + (it - lo) / span * (WIDTH - LEFT - RIGHT)


def _ymap(d):
    return HEIGHT - BOTTOM - d * (HEIGHT - TOP - BOTTOM)


def trace_svg(csv_text: str) -> str:
    cols = read_trace_csv(csv_text)
    its = cols["iteration"]
    lo = int(its[0]) if its.size else 1
    hi = int(its[-1]) if its.size else 1
    x0, x1 = LEFT, WIDTH - RIGHT
    y0, y1 = HEIGHT - BOTTOM, TOP
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
    ]
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _ymap(tick)
        parts.append(f'<line x1="{x0 - 5}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{x0 - 8}" y="{y + 4:.2f}" font-size="12" '
                     f'text-anchor="end">{tick:.2f}</text>')
    for it in sorted({lo, (lo + hi) // 2, hi}):
        x = _xmap(it, lo, hi)
        parts.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 5}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{y0 + 20}" font-size="12" '
                     f'text-anchor="middle">{it}</text>')
    parts.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 15}" font-size="14" '
                 f'text-anchor="middle">iteration</text>')
    parts.append(f'<text x="18" y="{(y0 + y1) / 2:.2f}" font-size="14" text-anchor="middle" '
                 f'transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">edge density</text>')
    if its.size:
        for name, color in SERIES:
            pts = " ".join(f"{_xmap(int(i), lo, hi):.2f},{_ymap(float(d)):.2f}"
                           for i, d in zip(its, cols[name]))
            parts.append(f'<polyline class="{name}" fill="none" stroke="{color}" '
                         f'stroke-width="1" points="{pts}"/>')
    for row, (name, color) in enumerate(SERIES):
        y = TOP - 22 + row * 14
        parts.append(f'<line x1="{x1 - 150}" y1="{y}" x2="{x1 - 130}" y2="{y}" stroke="{color}"/>')
        parts.append(f'<text x="{x1 - 125}" y="{y + 4}" font-size="12">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
