"""Static SVG scatter of two root sets and the convex hull of the first.

Output is plain SVG 1.1 with no scripts: roots of p as filled circles,
roots of p' as crosses, the hull of the roots of p as a closed polyline,
and a viewport padded by 10% on every side.
"""

import numpy as np

__all__ = ['convex_hull_2d', 'root_scatter_svg']

SIZE = 400


def convex_hull_2d(points):
    """Hull vertices in counterclockwise order (Andrew's monotone chain).

    Collinear and repeated points collapse to the segment endpoints or the
    single point.
    """
    pts = sorted(set((float(z.real), float(z.imag))
                     for z in np.asarray(points, dtype=complex).ravel()))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _fmt(v):
    return f'{v:.6g}'


def root_scatter_svg(lam, mu, title=None):
    """SVG document as a string."""
    lam = np.asarray(lam, dtype=complex).ravel()
    mu = np.asarray(mu, dtype=complex).ravel()
    allpts = np.concatenate([lam, mu])
    xmin, xmax = allpts.real.min(), allpts.real.max()
    ymin, ymax = allpts.imag.min(), allpts.imag.max()
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
    half = 0.5 * span * 1.2  # 10% padding each side
    x0, y0 = cx - half, cy - half
    unit = SIZE / (2 * half)

    def tx(z):
        # SVG y grows downward
        return (z.real - x0) * unit, (y0 + 2 * half - z.imag) * unit

    r = SIZE / 100
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">']
    if title:
        out.append(f'  <title>{_escape(title)}</title>')
    hull = convex_hull_2d(lam)
    if len(hull) >= 2:
        ring = hull + hull[:1]
        coords = ' '.join(f'{_fmt(a)},{_fmt(b)}' for a, b in (tx(complex(*h)) for h in ring))
        out.append(f'  <polyline points="{coords}" fill="none" stroke="gray" '
                   f'stroke-width="1"/>')
    for z in lam:
        x, y = tx(z)
        out.append(f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="black"/>')
    for z in mu:
        x, y = tx(z)
        out.append(f'  <path d="M {_fmt(x - r)} {_fmt(y - r)} L {_fmt(x + r)} {_fmt(y + r)} '
                   f'M {_fmt(x - r)} {_fmt(y + r)} L {_fmt(x + r)} {_fmt(y - r)}" '
                   f'stroke="red" stroke-width="1.5" fill="none"/>')
    out.append('</svg>')
    return '\n'.join(out) + '\n'


def _escape(s):
    return (s.replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;')
            .replace('"', '&quot;'))
