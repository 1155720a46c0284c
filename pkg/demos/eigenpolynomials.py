"""Polynomial eigenfunctions of f -> (Q f)^(k).

For monic Q of degree k this operator maps polynomials of degree <= m to
themselves and is upper triangular in the monomial basis.  So each degree m
has exactly one monic eigenpolynomial p_m.  Its zeros w lie in the convex
hull of the zeros z of Q.  More precisely, w = S z for an m x k matrix with
unit row sums and column sums m/k.
"""

import numpy as np

from normalspec import from_roots, ms_zero_report, tq_matrix

np.set_printoptions(precision=4, suppress=True)

z = np.array([1, 1j, -1.2 - 0.3j])
Q = from_roots(z)
op = tq_matrix(Q, 4)
print('operator matrix for m = 4 (diagonal (j+1)(j+2)(j+3)):')
print(op.M)

for m in (1, 2, 5, 8):
    rep = ms_zero_report(Q, m)
    print(f'\nm = {m}: zeros of p_m', np.round(rep.w, 4))
    print('  in hull:', rep.hull_ok, ' convex battery:', rep.battery_ok,
          ' stochastic witness:', rep.stochastic_ok)
    print('  S column sums', np.round(rep.S.sum(axis=0), 6), ' m/k =', round(m / 3, 6))
