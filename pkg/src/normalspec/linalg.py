"""Dense complex matrix helpers.

Matrices are plain ``numpy`` complex arrays.  Functions here never mutate
their inputs.
"""

from itertools import combinations

import numpy as np

from .errors import (DimensionTooLarge, LevelOutOfRange, NonUnitVector,
                     NotUnitary, ShapeMismatch)
from .poly import ComplexPoly, roots

__all__ = ['as_cmatrix', 'unitary_with_last_row', 'check_unitary',
           'compound', 'subsets', 'char_poly', 'frobenius_sq',
           'schur_product', 'schur_triangularize', 'householder_to_first',
           'unitary_stochastic', 'commutator_norm', 'CHAR_POLY_MAX_DIM']

CHAR_POLY_MAX_DIM = 16


def as_cmatrix(A, square=False):
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ShapeMismatch(f'expected a 2-d matrix, got shape {A.shape}')
    if not np.all(np.isfinite(A)):
        raise ValueError('matrix entries must be finite')
    if square and A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f'expected a square matrix, got shape {A.shape}')
    return A


def check_unitary(U, tol=1e-10):
    """Return ``U`` as a complex array, raising NotUnitary if U*U != I."""
    U = as_cmatrix(U, square=True)
    err = np.abs(U.conj().T @ U - np.eye(U.shape[0])).sum(axis=1).max(initial=0.0)
    if err > tol:
        raise NotUnitary(f'||U*U - I||_inf = {err:.3e} exceeds {tol:.1e}')
    return U


def unitary_with_last_row(x):
    """Unitary matrix whose last row is ``x``.

    The completion is one Householder reflection sending ``conj(x)`` to a
    multiple of the last basis vector, followed by a phase on the last row,
    so the result is a deterministic function of ``x``.
    """
    v = np.conj(np.asarray(x, dtype=complex).ravel())
    n = v.size
    if n == 0 or abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise NonUnitVector('last row must be a unit vector')
    vn = v[-1]
    phase = -vn / abs(vn) if vn != 0 else -1.0 + 0j
    u = v.copy()
    u[-1] -= phase
    P = np.eye(n, dtype=complex) - 2.0 * np.outer(u, u.conj()) / np.vdot(u, u).real
    P[-1] *= np.conj(phase)
    return P


def householder_to_first(v):
    """Hermitian unitary ``H`` with ``H @ v`` a multiple of e_1 (``v`` unit)."""
    v = np.asarray(v, dtype=complex).ravel()
    n = v.size
    v1 = v[0]
    phase = -v1 / abs(v1) if v1 != 0 else -1.0 + 0j
    u = v / np.linalg.norm(v)
    u[0] -= phase
    return np.eye(n, dtype=complex) - 2.0 * np.outer(u, u.conj()) / np.vdot(u, u).real


def subsets(n, k):
    """k-subsets of range(n) in lexicographic order."""
    return list(combinations(range(n), k))


def compound(A, k):
    """k-th compound matrix: all k x k minors, index sets in lex order."""
    A = as_cmatrix(A, square=True)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise LevelOutOfRange(f'level {k} outside 1..{n}')
    idx = np.array(subsets(n, k))
    sub = A[idx[:, None, :, None], idx[None, :, None, :]]
    return np.linalg.det(sub)


def char_poly(A):
    """Monic characteristic polynomial det(zI - A) by Faddeev-LeVerrier."""
    A = as_cmatrix(A, square=True)
    n = A.shape[0]
    if n > CHAR_POLY_MAX_DIM:
        raise DimensionTooLarge(f'char_poly is capped at n = {CHAR_POLY_MAX_DIM}')
    c = np.zeros(n + 1, dtype=complex)
    c[n] = 1.0
    M = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        M = A @ M + c[n - k + 1] * eye
        c[n - k] = -np.trace(A @ M) / k
    return ComplexPoly(c)


def frobenius_sq(A):
    A = np.asarray(A, dtype=complex)
    return float(np.sum(A.real ** 2 + A.imag ** 2))


def schur_product(A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ShapeMismatch(f'{A.shape} vs {B.shape}')
    return A * B


def unitary_stochastic(U):
    """U o conj(U), the doubly stochastic matrix of squared moduli."""
    U = np.asarray(U, dtype=complex)
    return (U * U.conj()).real


def commutator_norm(A):
    """max |(AA* - A*A)_ij|; zero exactly for normal matrices."""
    A = np.asarray(A, dtype=complex)
    Ah = A.conj().T
    return float(np.abs(A @ Ah - Ah @ A).max(initial=0.0))


def schur_triangularize(M, eigenvalues=None, seed=0, iterations=3, offset=1e-8):
    """Unitary ``Q`` with ``Q* M Q`` upper triangular, by iterated deflation.

    At each step an eigenvalue of the active block (taken in order from
    ``eigenvalues``, or else from the roots of its characteristic
    polynomial) seeds a shifted inverse iteration for a unit eigenvector,
    and a Householder reflection moves that vector to the front.

    Returns ``(Q, T)`` with ``T = Q* M Q``; the strictly lower part of ``T``
    is left as computed so callers can measure it.
    """
    M = as_cmatrix(M, square=True)
    n = M.shape[0]
    if eigenvalues is None:
        eigenvalues = roots(char_poly(M), seed=seed) if n else np.zeros(0)
    eigenvalues = np.asarray(eigenvalues, dtype=complex).ravel()
    if eigenvalues.size != n:
        raise ShapeMismatch(f'need {n} eigenvalues, got {eigenvalues.size}')
    rng = np.random.default_rng(seed)
    Q = np.eye(n, dtype=complex)
    T = M.copy()
    for i in range(n - 1):
        block = T[i:, i:]
        r = n - i
        shift = eigenvalues[i] + offset * (1.0 + abs(eigenvalues[i]))
        v = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        v /= np.linalg.norm(v)
        shifted = block - shift * np.eye(r)
        for _ in range(iterations):
            v = np.linalg.solve(shifted, v)
            v /= np.linalg.norm(v)
        H = np.eye(n, dtype=complex)
        H[i:, i:] = householder_to_first(v)
        T = H.conj().T @ T @ H
        Q = Q @ H
    return Q, T
