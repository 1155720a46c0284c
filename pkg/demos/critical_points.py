"""Doubly stochastic witnesses for the critical points of a polynomial.

Conjugate diag(lam) by a unitary whose last row is uniform.  The leading
block of the result has eigenvalues mu = roots(p'), and triangularizing it
gives a doubly stochastic S1 with (mu, mean(lam)) = S1 @ lam.  This makes
Gauss-Lucas quantitative.  The same matrix's compounds do the same for
products of k roots.

Running this script writes critical_points.svg next to it.
"""

import os

import numpy as np

from normalspec import (ConvexFunction, block_row_sum_probe, debruijn_check, from_roots,
                        gl_witness, schoenberg_check, sk_witness)
from normalspec.svg import root_scatter_svg

np.set_printoptions(precision=4, suppress=True)

lam = np.array([1.5, 1j, -1 - 0.5j, 0.2 - 1.2j, -0.7 + 0.9j])
p = from_roots(lam)
w = gl_witness(p)
print('S1 =\n', w.S1.S)
print('last row is uniform:', np.allclose(w.S1.S[-1], 1 / 5))
print('|(mu, mean) - S1 lam| =', w.residual)

for k in range(1, 5):
    lk = sk_witness(w, k)
    b = block_row_sum_probe(w, k)
    print(f'level {k}: size {lk.Sk.shape[0]:2d}, identity residual {lk.residual:.1e}, '
          f'mass on rows containing n = {b.measured:.6f} (k/n = {k / 5})')

# Averaged convex inequality: products of critical points are "less spread"
# than products of roots, for any convex f.
f = ConvexFunction('power', 0j, 2.0)
for k in (1, 2, 3):
    [(_, left, right, slack)] = debruijn_check(p, k, 0.0, [f])
    print(f'k = {k}: mean |prod mu|^2 = {left:.4f} <= mean |prod lam|^2 = {right:.4f}')

# Second moments: n sum |mu|^2 <= (n - 2) sum |lam|^2 for centered roots,
# with equality exactly when the roots are collinear.
centered = lam - lam.mean()
for name, pts in [('generic', centered), ('collinear', (1 + 2j) * np.array([-2, -1, 0, 1, 2]))]:
    r = schoenberg_check(pts)
    print(f'{name:9s}: lhs {r.lhs:.4f}  rhs {r.rhs:.4f}  equality {r.equality}')

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'critical_points.svg')
with open(out, 'w') as fh:
    fh.write(root_scatter_svg(w.lam, w.mu, title='roots (dots) and critical points (crosses)'))
print('\nwrote', out)
