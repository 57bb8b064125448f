"""Hand-written SVG output and small report helpers."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence, Tuple

from .region import Region


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


def _svg_open(w, h):
    return [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
            f'<rect width="{w}" height="{h}" fill="white"/>']


def region_svg(region: Region, points: Sequence[Tuple[Fraction, Fraction]] = (), size: int = 480) -> str:
    pad = 40
    gmax = float(region.q - 1)
    sx = (size - 2 * pad) / gmax
    sy = (size - 2 * pad) / 1.0

    def xy(g, d):
        return pad + float(g) * sx, size - pad - float(d) * sy

    out = _svg_open(size, size)
    out.append(f'<line x1="{pad}" y1="{size - pad}" x2="{size - pad}" y2="{size - pad}" stroke="black"/>')
    out.append(f'<line x1="{pad}" y1="{size - pad}" x2="{pad}" y2="{pad}" stroke="black"/>')
    out.append(f'<text x="{size - pad}" y="{size - pad + 25}" font-size="12">gamma</text>')
    out.append(f'<text x="5" y="{pad - 10}" font-size="12">delta</text>')
    poly = " ".join("%.2f,%.2f" % xy(g, d) for g, d in region.vertices)
    out.append(f'<polygon points="{poly}" fill="#cde" stroke="#246" stroke-width="1.5"/>')
    for g, d in region.vertices:
        x, y = xy(g, d)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#246"/>')
        out.append(f'<text x="{x + 4:.2f}" y="{y - 4:.2f}" font-size="10">({g}, {d})</text>')
    for g, d in points:
        x, y = xy(g, d)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#c22"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def heatmap_svg(grid: Sequence[Sequence[int]], gammas: Sequence, deltas: Sequence, title: str = "", cell: int = 28) -> str:
    """grid[a][b] is the value at (gammas[b], deltas[a])."""
    pad = 50
    rows, cols = len(deltas), len(gammas)
    w, h = pad * 2 + cols * cell, pad * 2 + rows * cell
    top = max((max(r) for r in grid), default=0) or 1
    out = _svg_open(w, h)
    out.append(f'<text x="{pad}" y="20" font-size="13">{title}</text>')
    for a in range(rows):
        for b in range(cols):
            v = grid[a][b]
            shade = int(255 - 200 * v / top)
            x, y = pad + b * cell, h - pad - (a + 1) * cell
            out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="rgb(255,{shade},{shade})" stroke="#ccc"/>')
            out.append(f'<text x="{x + 4}" y="{y + cell // 2 + 4}" font-size="10">{v}</text>')
    for b, g in enumerate(gammas):
        out.append(f'<text x="{pad + b * cell + 2}" y="{h - pad + 14}" font-size="8">{g}</text>')
    for a, d in enumerate(deltas):
        out.append(f'<text x="5" y="{h - pad - a * cell - cell // 2 + 4}" font-size="8">{d}</text>')
    out.append(f'<text x="{w // 2}" y="{h - 10}" font-size="11">gamma</text>')
    out.append(f'<text x="5" y="{pad - 10}" font-size="11">delta</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
