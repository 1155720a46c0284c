"""Two ways to say that a family of planar points is "more spread out".

x < y (hull order): for each k, every sum of k points of x lies in the
convex hull of all sums of k points of y.

x <_ds y: after adding points, x = S y for a doubly stochastic S.

The second implies the first.  For real numbers the two agree, but in the
plane they do not.  The four-point families below satisfy the hull order
while no doubly stochastic matrix maps y onto x.
"""

import numpy as np

from normalspec import hlp_check, majorize, t_transform_witness

np.set_printoptions(precision=4, suppress=True)

x = [(12, 12), (12, 12), (5, 3), (3, 5)]
y = [(8, 16), (16, 8), (0, 0), (8, 8)]
rep = majorize(x, y)
print('hull order, level by level:', rep.levels)
print('hull order holds:          ', rep.prec)
print('doubly stochastic order:   ', rep.prec_ds)
print('phase-1 objective:         ', rep.ds_objective)

# On the line the two orders coincide and the witness is a chain of at most
# m - 1 transfers between pairs of coordinates.
alpha = np.array([6.0, 3.0, 0.0, -1.0])
beta = np.array([4.0, 2.0, 1.0, 1.0])
print('\nbeta majorized by alpha:', hlp_check(beta, alpha))
witness, steps = t_transform_witness(beta, alpha)
print('T-transform steps (j, k, t):', [(j, k, round(t, 4)) for j, k, t in steps])
print('S =\n', witness.S)
print('S @ alpha =', witness.S @ alpha)
