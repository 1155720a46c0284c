"""Doubly stochastic witnesses relating the roots of p and of p'.

Let ``lam`` be the roots of p (degree n), ``mu`` the roots of p' and
``mu_n = mean(lam)``.  Conjugating ``diag(lam)`` by a unitary whose last
row is ``1/sqrt(n)`` gives a normal matrix whose leading (n-1) block has
spectrum ``mu``; Schur-triangularizing that block puts ``mu`` on the
diagonal, and the squared moduli of the combined unitary ``W`` form a
doubly stochastic ``S1`` with ``(mu, mu_n) = S1 @ lam`` and last row
uniform.  Compound matrices of ``W`` give the same statement for products
of k roots.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .convex import ConvexFunction, averaged_slack
from .errors import (ArgumentError, InvalidDescriptor, LevelOutOfRange,
                     MultipleRoots, NotCentered, SizeExceeded)
from .inverse import NormalModel, principal_residual
from .linalg import (compound, frobenius_sq, schur_triangularize,
                     subsets, unitary_stochastic, unitary_with_last_row)
from .majorization import BistochasticWitness, MajorizationReport, point_in_hull
from .poly import as_poly, derivative, from_roots, roots

__all__ = ['GaussLucasWitness', 'LevelKWitness', 'BlockRowSum',
           'SchoenbergReport', 'DFTWitness', 'gl_witness', 'sk_witness',
           'block_row_sum_probe', 'prodeq_check', 'k_products',
           'debruijn_check', 'schoenberg_check', 'dft_normal_witness',
           'diagonal_majorization_probe', 'hull_corollary_check',
           'level_order', 'MAX_COMPOUND']

MAX_COMPOUND = 70
MULTIPLE_ROOT_GAP = 1e-6
COLLINEAR_TOL = 1e-8
EQUALITY_TOL = 1e-7


@dataclass(frozen=True)
class GaussLucasWitness:
    """``(mu, mu_n) = S1 @ lam`` with ``S1 = W o conj(W)``.

    ``mu`` is listed in the order it appears on the triangularized
    diagonal.  ``residual`` is ``max |(mu, mu_n) - S1 lam|`` and
    ``schur_residual`` the largest entry left below the diagonal of the
    triangularized block.
    """
    lam: np.ndarray
    mu: np.ndarray
    mu_n: complex
    S1: BistochasticWitness
    W: np.ndarray
    residual: float
    schur_residual: float
    seed: int

    @property
    def n(self):
        return self.lam.size


@dataclass(frozen=True)
class LevelKWitness:
    """Level-k witness, rows and columns ordered by :func:`level_order`.

    ``block_sums[j]`` is the sum of column j over the rows whose index set
    contains the last index.  ``residual`` is the largest relative mismatch
    of ``C_k(mu - a) = P Sk C_k(lam - a)`` over the sampled shifts ``a``.
    """
    k: int
    Sk: np.ndarray
    index_sets: list
    block_sums: np.ndarray
    residual: float
    alphas: np.ndarray

    @property
    def block_row_sum(self):
        return float(self.block_sums.mean())


@dataclass(frozen=True)
class BlockRowSum:
    measured: float
    spread: float
    k_over_n: float
    n_minus_k_over_n: float
    matches_k_over_n: bool
    matches_n_minus_k_over_n: bool


@dataclass(frozen=True)
class SchoenbergReport:
    lhs: float
    rhs: float
    slack: float
    collinear: bool
    equality: bool
    scale: float
    mu: np.ndarray


@dataclass(frozen=True)
class DFTWitness:
    A: np.ndarray
    U: np.ndarray
    identity_slack: float
    diagonal_max: float
    charpoly_residual: float


def _simple_roots(p, seed):
    lam = roots(p, seed=seed)
    gaps = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(gaps, np.inf)
    scale = max(1.0, np.abs(lam).max())
    if lam.size > 1 and gaps.min() <= MULTIPLE_ROOT_GAP * scale:
        raise MultipleRoots('p has a repeated root; divide out the common factor first')
    return lam


def gl_witness(p, seed=0):
    p = as_poly(p)
    n = p.degree
    if n < 2:
        raise ArgumentError('need degree >= 2')
    lam = _simple_roots(p, seed)
    mu = roots(derivative(p), seed=seed)
    U = unitary_with_last_row(np.full(n, 1.0 / np.sqrt(n)))
    A = (U * lam) @ U.conj().T
    Q, T = schur_triangularize(A[:-1, :-1], eigenvalues=mu, seed=seed)
    V1 = np.eye(n, dtype=complex)
    V1[:-1, :-1] = Q
    W = V1.conj().T @ U
    S1 = BistochasticWitness.from_matrix(unitary_stochastic(W))
    mu_n = complex(lam.mean())
    target = np.append(mu, mu_n)
    residual = float(np.abs(target - S1.S @ lam).max())
    schur_residual = float(np.abs(np.tril(T, -1)).max(initial=0.0))
    return GaussLucasWitness(lam, mu, mu_n, S1, W, residual, schur_residual, seed)


def level_order(n, k):
    """Lex-ordered k-subsets of range(n), those avoiding n - 1 first.

    Returns ``(perm, index_sets)`` with ``index_sets = lex[perm]``.
    """
    lex = subsets(n, k)
    avoid = [i for i, s in enumerate(lex) if n - 1 not in s]
    contain = [i for i, s in enumerate(lex) if n - 1 in s]
    perm = np.array(avoid + contain, dtype=int)
    return perm, [lex[i] for i in perm]


def k_products(values, k, alpha=0.0):
    """C_k of the shifted values: products over k-subsets, lex order."""
    v = np.asarray(values, dtype=complex).ravel() - alpha
    return np.array([np.prod(v[list(s)]) for s in combinations(range(v.size), k)],
                    dtype=complex)


def sk_witness(w, k, n_alpha=5):
    n = w.n
    if not 1 <= k <= n - 1:
        raise LevelOutOfRange(f'level {k} outside 1..{n - 1}')
    if comb(n, k) > MAX_COMPOUND:
        raise SizeExceeded(f'C({n},{k}) = {comb(n, k)} exceeds {MAX_COMPOUND}')
    perm, sets = level_order(n, k)
    Sk = unitary_stochastic(compound(w.W, k))[np.ix_(perm, perm)]
    BistochasticWitness.from_matrix(Sk)
    a = comb(n - 1, k)
    rng = np.random.default_rng([w.seed, k])
    scale = max(1.0, np.abs(w.lam).max())
    alphas = scale * (rng.uniform(-1, 1, n_alpha) + 1j * rng.uniform(-1, 1, n_alpha))
    residual = 0.0
    for al in alphas:
        big = k_products(w.lam, k, al)[perm]
        lhs = k_products(w.mu, k, al)
        rhs = (Sk @ big)[:a]
        residual = max(residual, float(np.abs(lhs - rhs).max() / max(1.0, np.abs(big).max())))
    return LevelKWitness(k, Sk, sets, Sk[a:].sum(axis=0), residual, alphas)


def block_row_sum_probe(w, k, tol=1e-7):
    """Measured per-column mass of the rows whose index set contains n.

    Compared against both k/n and (n-k)/n.
    """
    lk = sk_witness(w, k, n_alpha=0)
    sums = lk.block_sums
    measured = float(sums.mean())
    n = w.n
    return BlockRowSum(measured, float(sums.max() - sums.min()), k / n, (n - k) / n,
                       abs(measured - k / n) <= tol, abs(measured - (n - k) / n) <= tol)


def prodeq_check(lam, mu, alpha, k):
    """|avg of k-products of (mu - alpha) - avg of k-products of (lam - alpha)|."""
    lam = np.asarray(lam, dtype=complex).ravel()
    mu = np.asarray(mu, dtype=complex).ravel()
    if np.abs(lam).max() > 12:
        raise ArgumentError('roots must satisfy |lam| <= 12')
    n = lam.size
    if mu.size != n - 1 or not 1 <= k <= n - 1:
        raise LevelOutOfRange(f'level {k} outside 1..{n - 1}')
    # e_k of the shifted values is (-1)^k times coefficient n-k of prod(z - v)
    ek_lam = (-1) ** k * from_roots(lam - alpha).coeffs[n - k]
    ek_mu = (-1) ** k * from_roots(mu - alpha).coeffs[n - 1 - k]
    return float(abs(ek_mu / comb(n - 1, k) - ek_lam / comb(n, k)))


def _battery(battery):
    out = []
    for f in battery:
        if isinstance(f, ConvexFunction):
            out.append(f)
        elif isinstance(f, dict):
            out.append(ConvexFunction.from_dict(f))
        else:
            raise InvalidDescriptor(f'not a convex-function descriptor: {f!r}')
    return out


def debruijn_check(p, k, alpha, battery, seed=0, lam=None, mu=None):
    """Averaged convex inequality over k-products of shifted roots.

    Returns a list of ``(f, left, right, slack)``: left averages f over
    the k-products of ``mu - alpha``, right over those of ``lam - alpha``.
    """
    battery = _battery(battery)
    p = as_poly(p)
    if lam is None:
        lam = roots(p, seed=seed)
    if mu is None:
        mu = roots(derivative(p), seed=seed)
    n = p.degree
    if not 1 <= k <= n - 1:
        raise LevelOutOfRange(f'level {k} outside 1..{n - 1}')
    small = k_products(mu, k, alpha)
    large = k_products(lam, k, alpha)
    return [(f, *averaged_slack(f, small, large)) for f in battery]


def _collinear(lam, tol=COLLINEAR_TOL):
    P = np.column_stack([lam.real, lam.imag])
    M = P.T @ P
    tr = np.trace(M)
    if tr == 0:
        return True
    ev = np.linalg.eigvalsh(M / tr)
    return bool(ev[0] <= tol)


def schoenberg_check(lam, seed=0):
    """n sum|mu|^2 against (n - 2) sum|lam|^2 for centered ``lam``."""
    lam = np.asarray(lam, dtype=complex).ravel()
    n = lam.size
    if n < 2:
        raise ArgumentError('need at least two roots')
    size = max(1.0, np.abs(lam).max())
    if abs(lam.sum()) > 1e-9 * size:
        raise NotCentered(f'|sum lam| = {abs(lam.sum()):.3e}')
    mu = roots(derivative(from_roots(lam)), seed=seed)
    lhs = n * float(np.sum(np.abs(mu) ** 2))
    rhs = (n - 2) * float(np.sum(np.abs(lam) ** 2))
    scale = max(float(np.sum(np.abs(lam) ** 2)), np.finfo(float).tiny)
    slack = rhs - lhs
    return SchoenbergReport(lhs, rhs, slack, _collinear(lam), slack <= EQUALITY_TOL * scale,
                            scale, mu)


def dft_normal_witness(lam, seed=0):
    """``F diag(lam) F*`` for the Fourier matrix F (last row uniform).

    ``identity_slack`` is ``|n ||A_{n-1}||^2 - (n - 2) ||A||^2|``.
    """
    lam = np.asarray(lam, dtype=complex).ravel()
    n = lam.size
    if n < 2:
        raise ArgumentError('need at least two roots')
    if abs(lam.sum()) > 1e-9 * max(1.0, np.abs(lam).max()):
        raise NotCentered(f'|sum lam| = {abs(lam.sum()):.3e}')
    rows = np.arange(1, n + 1)[:, None]
    cols = np.arange(n)[None, :]
    U = np.exp(2j * np.pi * rows * cols / n) / np.sqrt(n)
    A = (U * lam) @ U.conj().T
    sub = A[:-1, :-1]
    slack = abs(n * frobenius_sq(sub) - (n - 2) * frobenius_sq(A))
    mu = roots(derivative(from_roots(lam)), seed=seed) if n > 1 else np.zeros(0)
    model = NormalModel(U, lam)
    return DFTWitness(A, U, float(slack), float(np.abs(np.diag(A)).max()),
                      principal_residual(model, mu))


def diagonal_majorization_probe(model, tol=1e-9):
    """diag(A) = (U o conj U) @ spectrum, as a majorization report."""
    S = unitary_stochastic(model.U)
    d = np.asarray(model.d, dtype=complex)
    diag = np.diag(model.matrix)
    residual = float(np.abs(diag - S @ d).max())
    rep = MajorizationReport(tol=tol)
    rep.witness = BistochasticWitness.from_matrix(S)
    rep.extended = np.column_stack([diag.real, diag.imag])
    rep.prec_ds = residual <= tol
    rep.ds_objective = residual
    return rep


def hull_corollary_check(lam, mu):
    """For each j, is prod_k(lam_j - mu_k) on the segment [0, p'(lam_j)]?"""
    lam = np.asarray(lam, dtype=complex).ravel()
    mu = np.asarray(mu, dtype=complex).ravel()
    out = []
    for j in range(lam.size):
        z = np.prod(lam[j] - mu)
        dp = np.prod(np.delete(lam[j] - lam, j))
        inside, _ = point_in_hull(z, np.array([0.0, dp]))
        out.append(bool(inside))
    return out
