"""Normal matrices with a prescribed spectrum and prescribed spectrum of
the leading (n-1) x (n-1) principal submatrix.

Given ``lam`` (n values) and ``mu`` (n - 1 values) the rational function

    Delta(z) = prod(mu_j - z) / prod(lam_k - z) = sum c_k / (lam_k - z)

has residues ``c_k``.  A normal solution exists exactly when every residue
is a nonnegative real; one is ``U diag(lam) U*`` for any unitary U whose
last row is ``sqrt(c)``.

Tolerances: solvability 1e-9, verification 1e-7, Arnoldi breakdown 1e-10.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import (ArgumentError, BreakdownBeforeCompletion,
                     DegenerateSpectrum, NotIsometry, NotSolvable, PoleHit)
from .linalg import char_poly, unitary_with_last_row
from .majorization import prec_ds_check
from .poly import ComplexPoly, from_roots, roots

__all__ = ['SpectralPair', 'NormalModel', 'HessenbergForm', 'WeylFunction',
           'residues', 'solvable', 'solve_inverse', 'principal_residual',
           'weyl_function', 'weyl_eval', 'quasi_jacobi', 'compress',
           'compression_check', 'pair_from_weights', 'multiplicity_diagnostic',
           'SOLVABLE_TOL', 'VERIFY_TOL', 'BREAKDOWN_TOL']

SOLVABLE_TOL = 1e-9
VERIFY_TOL = 1e-7
BREAKDOWN_TOL = 1e-10


@dataclass(frozen=True)
class SpectralPair:
    lam: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=complex).ravel()
        mu = np.asarray(self.mu, dtype=complex).ravel()
        if lam.size < 2:
            raise ArgumentError('need at least two eigenvalues')
        if mu.size != lam.size - 1:
            raise ArgumentError(f'mu must have {lam.size - 1} values, got {mu.size}')
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(mu))):
            raise ArgumentError('spectra must be finite')
        object.__setattr__(self, 'lam', lam)
        object.__setattr__(self, 'mu', mu)

    @property
    def n(self):
        return self.lam.size


def _pair(pair, mu=None):
    if isinstance(pair, SpectralPair):
        return pair
    return SpectralPair(pair, mu)


@dataclass(frozen=True)
class NormalModel:
    """``U diag(d) U*``, normal by construction."""
    U: np.ndarray
    d: np.ndarray

    @property
    def n(self):
        return self.d.size

    @property
    def matrix(self):
        return (self.U * self.d) @ self.U.conj().T

    @property
    def weights(self):
        """Squared moduli of the last row of U: the spectral weights of e_n."""
        return np.abs(self.U[-1]) ** 2


@dataclass(frozen=True)
class HessenbergForm:
    """Upper Hessenberg ``H = Q* diag(d) Q`` with a nonnegative subdiagonal.

    ``Q`` holds the orthonormal Krylov basis; its first column is the
    cyclic vector.  The first basis vector plays the role of the last one in
    the lower-Hessenberg convention; :meth:`lower_hessenberg` converts.
    """
    H: np.ndarray
    Q: np.ndarray

    def lower_hessenberg(self):
        return self.H[::-1, ::-1].copy()

    @property
    def subdiagonal(self):
        return np.diag(self.H, -1)


@dataclass(frozen=True)
class WeylFunction:
    poles: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if abs(w.sum() - 1.0) > 1e-10 or w.min(initial=0.0) < -1e-12:
            raise ArgumentError('weights must be nonnegative and sum to 1')
        object.__setattr__(self, 'poles', np.asarray(self.poles, dtype=complex).ravel())
        object.__setattr__(self, 'weights', w)

    def __call__(self, z):
        return weyl_eval(self, z)


def residues(pair, mu=None):
    """Residues of prod(mu_j - z) / prod(lam_k - z) at each ``lam_k``.

    Raises DegenerateSpectrum when two ``lam`` values are closer than
    ``1e-9 * max(1, max|lam|)``.
    """
    pair = _pair(pair, mu)
    lam, mu = pair.lam, pair.mu
    gaps = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(gaps, np.inf)
    scale = max(1.0, np.abs(lam).max())
    if gaps.min() <= 1e-9 * scale:
        raise DegenerateSpectrum('eigenvalues of the full matrix must be simple; '
                                 'deflate repeated values first')
    num = np.prod(mu[None, :] - lam[:, None], axis=1)
    diff = lam[None, :] - lam[:, None]
    np.fill_diagonal(diff, 1.0)
    return num / np.prod(diff, axis=1)


def _first_bad(c, tol):
    bad = np.flatnonzero((c.real < -tol) | (np.abs(c.imag) > tol))
    return int(bad[0]) if bad.size else None


def solvable(pair, mu=None, tol=SOLVABLE_TOL):
    return _first_bad(residues(pair, mu), tol) is None


def solve_inverse(pair, mu=None, tol=SOLVABLE_TOL):
    """Normal matrix model with spectrum ``lam`` whose leading principal
    (n-1) block has spectrum ``mu``.

    Raises NotSolvable naming the first residue that is not a nonnegative
    real within ``tol``.
    """
    pair = _pair(pair, mu)
    c = residues(pair)
    bad = _first_bad(c, tol)
    if bad is not None:
        raise NotSolvable(f'residue {bad + 1} = {c[bad]:.6g} is not a nonnegative real',
                          bad, complex(c[bad]))
    x = np.sqrt(np.maximum(c.real, 0.0))
    x /= np.linalg.norm(x)
    return NormalModel(unitary_with_last_row(x), pair.lam.copy())


def principal_residual(model, mu):
    """Coefficient mismatch between char_poly(A_{n-1}) and prod(z - mu).

    Coefficient j of a degree-r characteristic polynomial is bounded by
    ``C(r, j) ||M||^j``, so each mismatch is divided by
    ``C(r, j) max(1, ||A||_2)^j``; the maximum is returned.
    """
    A = model.matrix
    sub = A[:-1, :-1]
    r = sub.shape[0]
    got = char_poly(sub).coeffs
    want = from_roots(mu).coeffs
    rho = max(1.0, np.abs(model.d).max())
    j = np.arange(r, -1, -1)  # coefficient of z**i multiplies e_{r-i}
    scale = np.array([comb(r, int(k)) for k in j]) * rho ** j
    return float(np.max(np.abs(got - want) / scale))


def weyl_function(pair, mu=None, tol=SOLVABLE_TOL):
    pair = _pair(pair, mu)
    c = residues(pair)
    bad = _first_bad(c, tol)
    if bad is not None:
        raise NotSolvable(f'residue {bad + 1} is not a nonnegative real', bad, complex(c[bad]))
    w = np.maximum(c.real, 0.0)
    return WeylFunction(pair.lam, w / w.sum())


def weyl_eval(w, z):
    """sum weights_k / (poles_k - z); PoleHit within 1e-6 of a pole."""
    z = complex(z)
    if np.abs(w.poles - z).min() < 1e-6:
        raise PoleHit(f'{z} is within 1e-6 of a pole')
    return complex(np.sum(w.weights / (w.poles - z)))


def quasi_jacobi(model, tol=BREAKDOWN_TOL):
    """Canonical upper-Hessenberg form of a normal model.

    Arnoldi on ``diag(d)`` started from ``U* e_n`` (the conjugated last row
    of U), with two Gram-Schmidt passes per step.  Each new basis vector is
    scaled by a positive real, so the subdiagonal is nonnegative and the
    result depends only on ``d`` and the weights ``|U[-1]|**2``.
    """
    d = np.asarray(model.d, dtype=complex)
    n = d.size
    v = np.conj(model.U[-1]).astype(complex)
    Q = np.zeros((n, n), dtype=complex)
    H = np.zeros((n, n), dtype=complex)
    Q[:, 0] = v / np.linalg.norm(v)
    for j in range(n):
        w = d * Q[:, j]
        basis = Q[:, :j + 1]
        for _ in range(2):
            h = basis.conj().T @ w
            w = w - basis @ h
            H[:j + 1, j] += h
        if j + 1 < n:
            beta = np.linalg.norm(w)
            if beta <= tol:
                raise BreakdownBeforeCompletion(
                    f'Krylov space closed at dimension {j + 1} of {n}: the start vector '
                    'is not cyclic (repeated eigenvalue or zero weight)', j + 1)
            H[j + 1, j] = beta
            Q[:, j + 1] = w / beta
    return HessenbergForm(H, Q)


def compress(model, V):
    """``V* A V`` for an isometry ``V`` (n x m, orthonormal columns)."""
    A = model.matrix if isinstance(model, NormalModel) else np.asarray(model, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if V.ndim == 1:
        V = V[:, None]
    if V.shape[0] != A.shape[0]:
        raise NotIsometry(f'V has {V.shape[0]} rows for a {A.shape[0]}-dimensional space')
    if np.abs(V.conj().T @ V - np.eye(V.shape[1])).max(initial=0.0) > 1e-10:
        raise NotIsometry('columns of V are not orthonormal')
    return V.conj().T @ A @ V


def compression_check(model, V, seed=0):
    """Spectrum of the compression and its doubly stochastic majorization
    by the full spectrum (the level-1 necessary condition).

    Returns ``(eigenvalues, MajorizationReport)``.
    """
    B = compress(model, V)
    eig = roots(char_poly(B), seed=seed) if B.shape[0] else np.zeros(0)
    return eig, prec_ds_check(eig, np.asarray(model.d, dtype=complex))


def pair_from_weights(lam, weights, seed=0):
    """The pair whose residues are the given positive weights.

    ``mu`` are the zeros of ``sum_k w_k prod_{j != k}(z - lam_j)``.
    """
    lam = np.asarray(lam, dtype=complex).ravel()
    w = np.asarray(weights, dtype=float).ravel()
    if w.size != lam.size or w.min() < 0 or w.sum() <= 0:
        raise ArgumentError('need one nonnegative weight per eigenvalue')
    w = w / w.sum()
    num = np.zeros(lam.size, dtype=complex)
    for k in range(lam.size):
        num += w[k] * from_roots(np.delete(lam, k)).coeffs
    mu = roots(ComplexPoly(num), seed=seed)
    return SpectralPair(lam, mu)


def multiplicity_diagnostic(lam, mu, match_tol=1e-2):
    """Soft check that a k-fold cluster of ``lam`` holds k - 1 of ``mu``.

    Clusters are groups of ``lam`` chained within ``match_tol``.  Returns a
    list of ``(center, k, found)`` per cluster with k >= 2; ``found`` counts
    ``mu`` within ``match_tol`` of the center.
    """
    lam = np.asarray(lam, dtype=complex).ravel()
    mu = np.asarray(mu, dtype=complex).ravel()
    label = np.arange(lam.size)
    for i in range(lam.size):
        for j in range(i):
            if abs(lam[i] - lam[j]) < match_tol:
                label[label == label[i]] = label[j]
    out = []
    for lab in np.unique(label):
        members = lam[label == lab]
        if members.size < 2:
            continue
        center = members.mean()
        found = int(np.sum(np.abs(mu - center) < match_tol))
        out.append((complex(center), int(members.size), found))
    return out
