"""Projective pictures of real rank-3 arrangements as SVG.

The picture is the affine slice {v : c.v = 1} for a chart functional c.
All geometry is exact; coordinates are rounded only when printed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import exact
from .arrangement import Arrangement
from .chambers import PreconditionError, TriangleWitness
from .lattice import build_lattice

CANVAS = 500
PAD = Fraction(1, 5)


class ChartError(PreconditionError):
    pass


def _fmt(x: Fraction) -> str:
    return f"{float(x):.3f}"


def auto_chart(a: Arrangement, witness: TriangleWitness) -> tuple[int, ...]:
    """A chart in which the witness triangle is bounded.

    A positive combination of the signed wall normals is positive on every
    ray of the chamber, so all three vertices land at finite points.  The
    weights are varied until the chart is not itself a normal.
    """
    walls = sorted(witness.chamber.walls)
    k = 1
    while True:
        c = [0, 0, 0]
        for w, h in zip((1, k, k * k), walls):
            s = witness.chamber.sign_vector[h]
            for j in range(3):
                c[j] += w * s * a[h].normal[j]
        c = exact.primitive_integer(c)
        if c not in a.normal_set():
            return c
        k += 1


def _slice_point(c, v):
    """Image of the ray through v in the slice, or None if at infinity."""
    d = exact.dot(c, v)
    if d == 0:
        return None
    return [Fraction(x) / d for x in v]


def _clip(p, d, box):
    """Segment of the line p + s d inside the box, or None."""
    lo, hi = None, None
    for k in range(2):
        lo_k, hi_k = box[0][k], box[1][k]
        if d[k] == 0:
            if not lo_k <= p[k] <= hi_k:
                return None
            continue
        s1 = (lo_k - p[k]) / d[k]
        s2 = (hi_k - p[k]) / d[k]
        if s1 > s2:
            s1, s2 = s2, s1
        lo = s1 if lo is None else max(lo, s1)
        hi = s2 if hi is None else min(hi, s2)
    if lo is None or lo > hi:
        return None
    return [p[k] + lo * d[k] for k in range(2)], [p[k] + hi * d[k] for k in range(2)]


def projective_svg(a: Arrangement, chart: Sequence, highlight: TriangleWitness | None = None) -> str:
    if a.ambient_dim != 3 or a.rank != 3:
        raise PreconditionError("projective pictures need an essential rank-3 arrangement")
    c = exact.vector(chart)
    if len(c) != 3 or all(x == 0 for x in c):
        raise ChartError("chart must be a nonzero functional on the 3-space")
    if c and exact.primitive_integer(c) in a.normal_set():
        raise ChartError("chart is proportional to a normal; that line would sit at infinity")
    # slice coordinates: v = p0 + s*u1 + t*u2
    cc = exact.dot(c, c)
    p0 = [x / cc for x in c]
    u1, u2 = exact.nullspace([c], 3)

    def to2(v):
        w = [v[j] - p0[j] for j in range(3)]
        sol = exact.solve([[u1[j], u2[j]] for j in range(3)], w)
        return [sol[0], sol[1]]

    lat = build_lattice(a)
    verts = []
    for f in lat.stratum(2):
        d = exact.nullspace([a[i].normal for i in f.localization_indices], 3)[0]
        q = _slice_point(c, d)
        if q is not None:
            verts.append((to2(q), f.size))
    lines = []
    for h in a:
        al = exact.vector(h.normal)
        # alpha.(p0 + s u1 + t u2) = 0
        coef = (exact.dot(al, u1), exact.dot(al, u2))
        const = exact.dot(al, p0)
        nn = coef[0] ** 2 + coef[1] ** 2
        foot = [-const * coef[k] / nn for k in range(2)]
        lines.append((foot, (-coef[1], coef[0]), h))
    tri = None
    if highlight is not None:
        signs = [exact.dot(c, r) for r in highlight.chamber.rays]
        if any(s == 0 for s in signs) or len({s > 0 for s in signs}) != 1:
            raise ChartError("the highlighted triangle is not bounded in this chart")
        tri = [to2(_slice_point(c, r)) for r in highlight.chamber.rays]
    pts = [v for v, _ in verts] + [foot for foot, _, _ in lines] + (tri or [])
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    w = max(max(xs) - min(xs), Fraction(1))
    hgt = max(max(ys) - min(ys), Fraction(1))
    box = ([min(xs) - PAD * w, min(ys) - PAD * hgt], [max(xs) + PAD * w, max(ys) + PAD * hgt])
    span = max(box[1][0] - box[0][0], box[1][1] - box[0][1])
    scale = Fraction(CANVAS) / span
    width = (box[1][0] - box[0][0]) * scale
    height = (box[1][1] - box[0][1]) * scale

    def px(p):
        return _fmt((p[0] - box[0][0]) * scale), _fmt((box[1][1] - p[1]) * scale)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
           f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
           f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>']
    if tri is not None:
        coords = " ".join(",".join(px(p)) for p in tri)
        out.append(f'<polygon points="{coords}" fill="#b0b0b0" stroke="none"/>')
    for foot, d, h in lines:
        seg = _clip(foot, d, box)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = px(seg[0]), px(seg[1])
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1.5">'
                   f'<title>{h.label or h.form()}</title></line>')
    for v, size in verts:
        x, y = px(v)
        out.append(f'<circle cx="{x}" cy="{y}" r="{_fmt(Fraction(3, 2) * size)}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_projective_svg(a: Arrangement, chart: Sequence, highlight: TriangleWitness | None = None,
                        out=None) -> str:
    text = projective_svg(a, chart, highlight)
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
