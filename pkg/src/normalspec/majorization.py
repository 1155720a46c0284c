"""Majorization orders for families of vectors.

Two orders are decided here for families ``x = (x_1..x_l)`` and
``y = (y_1..y_m)`` in R^d, ``l <= m``:

* ``x < y`` (hull order): for every k, each sum of k members of ``x`` lies
  in the convex hull of the sums of k members of ``y``.
* ``x <_ds y`` (doubly stochastic order): ``x`` can be completed to m
  vectors equal to ``S y`` for a doubly stochastic ``S``.

The second implies the first but not conversely.  Complex inputs are
treated as points of the plane.

The hull of all k-subset sums of ``y`` is the image of the hypersimplex
``{t in [0,1]^m : sum t = k}`` under ``t -> sum t_i y_i`` (its vertices
are exactly the 0/1 vectors with k ones), so each membership test is one
LP with 2m variables instead of one with C(m, k).
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import (AlreadyFull, ArgumentError, CombinatorialBound,
                     LengthMismatch, NotMajorized)
from .lp import FEASIBILITY_TOL, lp_feasible

__all__ = ['as_family', 'BistochasticWitness', 'Certificate',
           'MajorizationReport', 'point_in_hull', 'subset_sum_in_hull',
           'prec_check', 'prec_ds_check', 'majorize', 'hlp_check',
           't_transform_witness', 'petrov_extend', 'projection_probe',
           'MAX_L', 'MAX_M']

MAX_L = 12
MAX_M = 14


def as_family(points, dim=None):
    """Return an ``(m, d)`` float array.

    1-d complex input becomes points of the plane, 1-d real input becomes
    points of the line.  An empty input needs ``dim``.
    """
    arr = np.asarray(points)
    if arr.size == 0:
        if dim is None:
            raise ArgumentError('empty family needs an explicit dimension')
        return np.zeros((0, dim))
    if np.iscomplexobj(arr):
        arr = arr.ravel()
        arr = np.column_stack([arr.real, arr.imag])
    elif arr.ndim == 1:
        arr = arr[:, None]
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != 2:
        raise ArgumentError(f'family must be 2-d, got shape {arr.shape}')
    if not np.all(np.isfinite(arr)):
        raise ArgumentError('family entries must be finite')
    if dim is not None and arr.shape[1] != dim:
        raise ArgumentError(f'family has dimension {arr.shape[1]}, expected {dim}')
    return arr


def _as_point(p, dim):
    p = np.asarray(p)
    if np.iscomplexobj(p):
        p = np.array([p.real, p.imag])
    p = np.asarray(p, dtype=float).ravel()
    if p.size != dim:
        raise ArgumentError(f'point has dimension {p.size}, expected {dim}')
    return p


@dataclass(frozen=True)
class BistochasticWitness:
    """Nonnegative matrix with unit row and column sums.

    ``row_err`` and ``col_err`` are the achieved max deviations of the row
    and column sums from 1.
    """
    S: np.ndarray
    row_err: float
    col_err: float

    @classmethod
    def from_matrix(cls, S, tol=1e-8):
        S = np.asarray(S, dtype=float)
        if S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise ArgumentError(f'witness must be square, got {S.shape}')
        row_err = float(np.abs(S.sum(axis=1) - 1).max(initial=0.0))
        col_err = float(np.abs(S.sum(axis=0) - 1).max(initial=0.0))
        if row_err > tol or col_err > tol or S.min(initial=0.0) < -1e-10:
            raise ArgumentError(f'not doubly stochastic (row {row_err:.2e}, '
                                f'col {col_err:.2e}, min {S.min():.2e})')
        return cls(S, row_err, col_err)


@dataclass(frozen=True)
class Certificate:
    """First failing hull test: level ``k``, 0-based ``subset`` of x.

    ``direction`` separates: its inner product with ``point`` exceeds the
    inner product with every k-subset sum of y.
    """
    level: int
    subset: tuple
    point: np.ndarray
    direction: np.ndarray


@dataclass
class MajorizationReport:
    prec: bool | None = None
    levels: dict = field(default_factory=dict)
    certificate: Certificate | None = None
    prec_ds: bool | None = None
    witness: BistochasticWitness | None = None
    extended: np.ndarray | None = None
    ds_objective: float | None = None
    tol: float = FEASIBILITY_TOL


def _coord_scale(*arrays):
    """Common divisor for coordinate rows: the largest coordinate magnitude."""
    return max([np.abs(a).max(initial=0.0) for a in arrays] + [np.finfo(float).tiny])


def point_in_hull(p, pts, tol=FEASIBILITY_TOL):
    """Is ``p`` a convex combination of ``pts``?

    Returns ``(inside, coefficients)``; coefficients are None when outside.
    """
    P = as_family(pts)
    p = _as_point(p, P.shape[1])
    A = np.vstack([P.T, np.ones(P.shape[0])])
    d = P.shape[1]
    rs = np.append(np.full(d, _coord_scale(P, p)), 0.0)
    res = lp_feasible(A, np.append(p, 1.0), tol=tol, row_scale=rs)
    return res.feasible, res.x


def subset_sum_in_hull(p, Y, k, tol=FEASIBILITY_TOL):
    """LP test of ``p`` against the hull of all k-subset sums of ``Y``."""
    m, d = Y.shape
    A = np.zeros((d + 1 + m, 2 * m))
    A[:d, :m] = Y.T
    A[d, :m] = 1.0
    A[d + 1:, :m] = np.eye(m)
    A[d + 1:, m:] = np.eye(m)
    b = np.concatenate([p, [k], np.ones(m)])
    rs = np.zeros(d + 1 + m)
    rs[:d] = _coord_scale(Y, p)
    return lp_feasible(A, b, tol=tol, row_scale=rs)


def _check_sizes(X, Y):
    l, m = X.shape[0], Y.shape[0]
    if X.shape[1] != Y.shape[1]:
        raise ArgumentError(f'dimension mismatch {X.shape[1]} vs {Y.shape[1]}')
    if m == 0:
        raise ArgumentError('y must be nonempty')
    if l > m:
        raise ArgumentError(f'x has {l} members, more than y ({m})')
    if l > MAX_L or m > MAX_M:
        raise CombinatorialBound(f'subset enumeration is bounded by l <= {MAX_L}, '
                                 f'm <= {MAX_M}; got l = {l}, m = {m}')


def prec_check(x, y, tol=FEASIBILITY_TOL):
    """Decide the hull order ``x < y`` level by level.

    Every level is evaluated; within a level the scan stops at the first
    failing subset.  The certificate is the failure with the lowest
    ``(k, subset)`` in lexicographic order.
    """
    Y = as_family(y)
    X = as_family(x, dim=Y.shape[1])
    _check_sizes(X, Y)
    l, d = X.shape
    report = MajorizationReport(tol=tol)
    cache = {}
    for k in range(1, l + 1):
        ok = True
        for sub in combinations(range(l), k):
            p = X[list(sub)].sum(axis=0)
            key = (k, p.tobytes())
            if key not in cache:
                cache[key] = subset_sum_in_hull(p, Y, k, tol=tol)
            res = cache[key]
            if not res.feasible:
                ok = False
                if report.certificate is None:
                    h = res.farkas[:d]
                    nrm = np.linalg.norm(h)
                    report.certificate = Certificate(k, sub, p, h / nrm if nrm else h)
                break
        report.levels[k] = ok
    report.prec = all(report.levels.values())
    return report


def prec_ds_check(x, y, tol=FEASIBILITY_TOL):
    """Decide ``x <_ds y`` with one LP over the m x m matrix entries.

    The first l rows of S must reproduce x; the remaining rows are free
    apart from stochasticity and define the completion ``extended``.
    """
    Y = as_family(y)
    X = as_family(x, dim=Y.shape[1])
    _check_sizes(X, Y)
    l, d = X.shape
    m = Y.shape[0]
    nvar = m * m
    rows = []
    rhs = []
    for i in range(m):
        r = np.zeros(nvar)
        r[i * m:(i + 1) * m] = 1.0
        rows.append(r)
        rhs.append(1.0)
    for j in range(m):
        r = np.zeros(nvar)
        r[j::m] = 1.0
        rows.append(r)
        rhs.append(1.0)
    for i in range(l):
        for c in range(d):
            r = np.zeros(nvar)
            r[i * m:(i + 1) * m] = Y[:, c]
            rows.append(r)
            rhs.append(X[i, c])
    rs = np.zeros(len(rows))
    rs[2 * m:] = _coord_scale(Y, X)
    res = lp_feasible(np.array(rows), np.array(rhs), tol=tol, row_scale=rs)
    report = MajorizationReport(tol=tol, ds_objective=res.objective)
    report.prec_ds = res.feasible
    if res.feasible:
        S = res.x.reshape(m, m)
        report.witness = BistochasticWitness.from_matrix(S)
        report.extended = S @ Y
    return report


def majorize(x, y, tol=FEASIBILITY_TOL):
    """Both orders in one report."""
    rep = prec_check(x, y, tol=tol)
    ds = prec_ds_check(x, y, tol=tol)
    rep.prec_ds = ds.prec_ds
    rep.witness = ds.witness
    rep.extended = ds.extended
    rep.ds_objective = ds.ds_objective
    return rep


def hlp_check(beta, alpha, strict=True, tol=1e-10):
    """Scalar majorization by sorted partial sums.

    With ``strict`` the totals must also agree (``beta`` majorized by
    ``alpha``); without it this is weak submajorization, where ``beta``
    may be shorter than ``alpha``.
    """
    beta = np.sort(np.asarray(beta, dtype=float).ravel())[::-1]
    alpha = np.sort(np.asarray(alpha, dtype=float).ravel())[::-1]
    if strict and beta.size != alpha.size:
        raise LengthMismatch(f'{beta.size} vs {alpha.size}')
    if beta.size > alpha.size:
        raise LengthMismatch(f'beta longer than alpha ({beta.size} > {alpha.size})')
    pb = np.cumsum(beta)
    pa = np.cumsum(alpha)[:beta.size]
    if np.any(pb > pa + tol):
        return False
    if strict and abs(alpha.sum() - beta.sum()) > tol:
        return False
    return True


def t_transform_witness(beta, alpha, tol=1e-10):
    """Doubly stochastic ``S`` with ``beta = S @ alpha``, built from T-transforms.

    Both vectors are sorted decreasingly; then each step moves mass between
    the last coordinate still too large and the first coordinate still too
    small, which equalizes at least one coordinate, so at most m - 1
    T-transforms are used.  The sorting permutations are folded into S.

    Returns ``(witness, steps)`` where each step is ``(j, k, t)`` in sorted
    coordinates: ``t I + (1 - t) Q_jk``.
    """
    beta = np.asarray(beta, dtype=float).ravel()
    alpha = np.asarray(alpha, dtype=float).ravel()
    if not hlp_check(beta, alpha, strict=True, tol=tol):
        raise NotMajorized('beta is not majorized by alpha')
    m = alpha.size
    ia = np.argsort(-alpha, kind='stable')
    ib = np.argsort(-beta, kind='stable')
    a = alpha[ia].copy()
    b = beta[ib]
    eps = 1e-13 * (1.0 + np.abs(alpha).max(initial=0.0))
    S = np.eye(m)
    steps = []
    for _ in range(2 * m):
        diff = a - b
        low = np.flatnonzero(diff < -eps)
        if low.size == 0:
            break
        k = low[0]
        high = np.flatnonzero(diff[:k] > eps)
        if high.size == 0:
            break
        j = high[-1]
        delta = min(a[j] - b[j], b[k] - a[k])
        t = 1.0 - delta / (a[j] - a[k])
        T = np.eye(m)
        T[j, j] = T[k, k] = t
        T[j, k] = T[k, j] = 1.0 - t
        a = T @ a
        S = T @ S
        steps.append((int(j), int(k), float(t)))
    full = np.zeros((m, m))
    full[np.ix_(ib, ia)] = S
    return BistochasticWitness.from_matrix(full), steps


def petrov_extend(x, y, check=False):
    """Append ``(sum y - sum x) / (m - l)`` to ``x``.

    The completion keeps the hull order, so ``x < y`` implies the extended
    family is still below ``y``.
    """
    Y = as_family(y)
    X = as_family(x, dim=Y.shape[1])
    l, m = X.shape[0], Y.shape[0]
    if l >= m:
        raise AlreadyFull(f'x already has {l} of {m} members')
    if check and not prec_check(X, Y).prec:
        raise NotMajorized('x is not majorized by y')
    new = (Y.sum(axis=0) - X.sum(axis=0)) / (m - l)
    return np.vstack([X, new])


def projection_probe(x, y, directions, tol=1e-9):
    """Necessary-condition probe for ``x < y`` along the given directions.

    For each direction the projections of x are completed with copies of
    the mean completion up to m members and compared by sorted partial sums.
    Returns ``(True, None)`` or ``(False, h)`` for the first failing ``h``.
    """
    Y = as_family(y)
    X = as_family(x, dim=Y.shape[1])
    l, m = X.shape[0], Y.shape[0]
    for h in directions:
        h = np.asarray(h, dtype=float).ravel()
        a = X @ h
        b = Y @ h
        if l < m:
            a = np.concatenate([a, np.full(m - l, (b.sum() - a.sum()) / (m - l))])
        scaled = tol * m * max(1.0, np.abs(b).max(initial=0.0), np.abs(a).max(initial=0.0))
        if not hlp_check(a, b, strict=True, tol=scaled):
            return False, h
    return True, None
