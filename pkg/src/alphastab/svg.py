"""SVG rendering of 2-coordinate parameter spaces.  Floats appear only here."""
from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .walls import ParameterSpace, sign_string

SIZE = 480
PAD = 40
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _wall_value(wall, space: ParameterSpace, u: float, v: float) -> float:
    pt = space.unflatten([Fraction(u), Fraction(v)])
    return float(wall.evaluate(pt))


def _segments(f, x0, x1, y0, y1, n):
    """Marching squares for the zero set of f on an n x n grid."""
    xs = [x0 + (x1 - x0) * i / n for i in range(n + 1)]
    ys = [y0 + (y1 - y0) * j / n for j in range(n + 1)]
    val = [[f(x, y) for y in ys] for x in xs]

    def cut(pa, pb, fa, fb):
        t = fa / (fa - fb) if fa != fb else 0.5
        return (pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]))

    segs = []
    for i in range(n):
        for j in range(n):
            corners = [((xs[i], ys[j]), val[i][j]), ((xs[i + 1], ys[j]), val[i + 1][j]),
                       ((xs[i + 1], ys[j + 1]), val[i + 1][j + 1]), ((xs[i], ys[j + 1]), val[i][j + 1])]
            pts = []
            for k in range(4):
                (pa, fa), (pb, fb) = corners[k], corners[(k + 1) % 4]
                if fa == 0:
                    pts.append(pa)
                elif (fa < 0) != (fb < 0) and fb != 0:
                    pts.append(cut(pa, pb, fa, fb))
            pts = list(dict.fromkeys(pts))
            for a in range(0, len(pts) - 1, 2):
                segs.append((pts[a], pts[a + 1]))
    return segs


def render(space: ParameterSpace, bounds, walls, chambers, grid: int = 60) -> str:
    """SVG text for the chamber table: walls as curves, representatives as labelled points.

    ``bounds`` is [(lo, hi), (lo, hi)] per flattened coordinate.
    """
    if space.total_dim != 2:
        raise ValueError(f"SVG needs exactly 2 parameter coordinates, this space has {space.total_dim}")
    (a0, a1), (b0, b1) = [(float(lo), float(hi)) for lo, hi in bounds]
    if a1 == a0:
        a0, a1 = a0 - 0.5, a1 + 0.5
    if b1 == b0:
        b0, b1 = b0 - 0.5, b1 + 0.5
    mx, my = (a1 - a0) * 0.05, (b1 - b0) * 0.05
    a0, a1, b0, b1 = a0 - mx, a1 + mx, b0 - my, b1 + my

    def X(u):
        return PAD + (u - a0) / (a1 - a0) * (SIZE - 2 * PAD)

    def Y(v):
        return SIZE - PAD - (v - b0) / (b1 - b0) * (SIZE - 2 * PAD)

    names = [f"{j}.{k}" for j, k in space.coords()]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect x="{PAD}" y="{PAD}" width="{SIZE - 2 * PAD}" height="{SIZE - 2 * PAD}" '
           'fill="none" stroke="#999"/>',
           f'<text x="{SIZE / 2:.1f}" y="{SIZE - 8}" text-anchor="middle" font-size="12">x{names[0]}</text>',
           f'<text x="12" y="{SIZE / 2:.1f}" font-size="12">x{names[1]}</text>']
    for wi, w in enumerate(walls):
        color = COLORS[wi % len(COLORS)]
        segs = _segments(lambda u, v: _wall_value(w, space, u, v), a0, a1, b0, b1, grid)
        path = " ".join(f"M{X(p[0]):.2f},{Y(p[1]):.2f}L{X(q[0]):.2f},{Y(q[1]):.2f}" for p, q in segs)
        out.append(f'<path d="{path}" stroke="{color}" stroke-width="2" fill="none"><title>wall {wi}</title></path>')
    for ch in chambers:
        u, v = (float(x) for x in space.flatten(ch.point))
        label = escape(sign_string(ch.signs) or "()")
        out.append(f'<circle cx="{X(u):.2f}" cy="{Y(v):.2f}" r="4" fill="black"/>')
        out.append(f'<text x="{X(u) + 6:.2f}" y="{Y(v) - 6:.2f}" font-size="12">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
