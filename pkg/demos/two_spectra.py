"""Build a normal matrix from its spectrum and the spectrum of its leading block.

A normal 4 x 4 matrix is pinned down, up to unitary similarity fixing the
last basis vector, by its eigenvalues lam and the eigenvalues mu of its
leading 3 x 3 block.  Not every pair works: the residues of
prod(mu - z) / prod(lam - z) must be nonnegative reals.

Critical points always work.  If lam are the roots of p, then mu = roots(p')
gives every residue 1/n.
"""

import numpy as np

from normalspec import (char_poly, derivative, from_roots, quasi_jacobi, residues, roots,
                        solve_inverse, weyl_function)
from normalspec.errors import NotSolvable

np.set_printoptions(precision=4, suppress=True)

lam = np.array([2, 1j, -1 - 1j, -0.5 + 0.25j])
p = from_roots(lam)
mu = roots(derivative(p))
print('roots of p      ', lam)
print('roots of p\'     ', np.round(mu, 4))
print('residues        ', np.round(residues(lam, mu), 12))

model = solve_inverse(lam, mu)
A = model.matrix
print('\nA is normal:     ', np.allclose(A @ A.conj().T, A.conj().T @ A))
print('eig of A_{n-1}:  ', np.round(roots(char_poly(A[:-1, :-1])), 4))

# The Arnoldi form started from the last basis vector is canonical: it only
# depends on the spectrum and on the weights |U[-1, k]|^2.
H = quasi_jacobi(model).H
print('\nHessenberg form (subdiagonal is real and positive):')
print(H)

# Its resolvent entry is the Weyl function sum_k w_k / (lam_k - z).
w = weyl_function(lam, mu)
z = 0.3 + 2j
direct = np.linalg.inv(A - z * np.eye(4))[-1, -1]
print('\nWeyl function at', z, ':', np.round(w(z), 10), ' resolvent entry:', np.round(direct, 10))

# Move one critical point outside the hull and the residues stop being positive.
try:
    solve_inverse(lam, np.append(mu[:-1], 5.0))
except NotSolvable as exc:
    print('\ncritical point moved to 5:', exc)
