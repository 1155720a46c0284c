"""Dense phase-1 simplex for feasibility of ``A x = b, x >= 0``.

Only feasibility is ever needed here: hull membership, doubly stochastic
witnesses and the Mason-Shapiro transport matrix are all "does a
nonnegative solution exist" questions.  Problems are desk-sized, so a plain
tableau with Bland's anti-cycling rule is adequate.

Rows are scaled to unit max-norm (coefficients and right-hand side
together, unless the caller fixes a common divisor) before solving, which makes the phase-1 objective, and hence the
feasibility threshold, independent of the units of the input.  Entries
below ``NOISE`` times the largest magnitude in the problem are treated as
roundoff and zeroed first.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, SizeExceeded

__all__ = ['LPResult', 'lp_feasible', 'FEASIBILITY_TOL', 'MAX_ROWS', 'MAX_VARS']

FEASIBILITY_TOL = 1e-7
MAX_ROWS = 200
MAX_VARS = 400
_PIVOT_EPS = 1e-11
_RATIO_EPS = 1e-9
NOISE = 1e-14


@dataclass(frozen=True)
class LPResult:
    """Outcome of :func:`lp_feasible`.

    Attributes
    ----------
    feasible : bool
        phase-1 optimum at or below the tolerance.
    x : ndarray or None
        a nonnegative solution when feasible.
    objective : float
        phase-1 optimum (sum of artificials) on the row-scaled system.
    farkas : ndarray or None
        when infeasible, ``y`` with ``y @ A <= 0`` (up to roundoff) and
        ``y @ b > 0``, in the caller's original row units.
    residual : float
        ``max |A x - b|`` on the row-scaled system, or nan if infeasible.
    iterations : int
    tol : float
    """
    feasible: bool
    x: np.ndarray | None
    objective: float
    farkas: np.ndarray | None
    residual: float
    iterations: int
    tol: float


def _pivot(T, row, col):
    T[row] /= T[row, col]
    others = np.arange(T.shape[0]) != row
    T[others] -= np.outer(T[others, col], T[row])


def lp_feasible(A, b, tol=FEASIBILITY_TOL, max_rows=MAX_ROWS, max_vars=MAX_VARS,
                row_scale=None):
    """Decide whether ``A x = b`` has a solution with ``x >= 0``.

    ``row_scale`` optionally fixes the divisor of each row; a zero entry
    means the default (the row's own max-norm).  Rows holding coordinates
    of one geometric object should share a divisor, so that the tolerance
    reads as a distance rather than a per-coordinate relative error.

    Raises SizeExceeded beyond ``max_rows`` x ``max_vars``.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    m, n = A.shape
    if b.size != m:
        raise ValueError(f'rhs has {b.size} entries for {m} rows')
    if m > max_rows or n > max_vars:
        raise SizeExceeded(f'LP of {m} rows x {n} variables exceeds '
                           f'{max_rows} x {max_vars}')

    # entries at roundoff level relative to the whole problem (e.g. the
    # imaginary parts of real data) are zeroed so they cannot become
    # constraints once each row is normalized to unit size
    big = max(np.abs(A).max(initial=0.0), np.abs(b).max(initial=0.0))
    A = np.where(np.abs(A) <= NOISE * big, 0.0, A)
    b = np.where(np.abs(b) <= NOISE * big, 0.0, b)
    scale = np.maximum(np.abs(A).max(axis=1, initial=0.0), np.abs(b))
    if row_scale is not None:
        fixed = np.asarray(row_scale, dtype=float).ravel()
        if fixed.size != m:
            raise ValueError(f'row_scale has {fixed.size} entries for {m} rows')
        scale = np.where(fixed > 0, fixed, scale)
    scale[scale == 0] = 1.0
    sign = np.where(b < 0, -1.0, 1.0)
    rowmul = sign / scale
    As = A * rowmul[:, None]
    bs = b * rowmul

    # tableau: [As | I | bs] with a reduced-cost row underneath
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = As
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = bs
    T[m, n:n + m] = 1.0
    T[m] -= T[:m].sum(axis=0)
    basis = list(range(n, n + m))

    max_iter = 50 * (m + n) + 100
    it = 0
    while True:
        r = T[m, :-1]
        candidates = np.flatnonzero(r < -_PIVOT_EPS)
        if candidates.size == 0:
            break
        if it >= max_iter:
            raise NoConvergence(f'simplex exceeded {max_iter} pivots')
        col = candidates[0]
        column = T[:m, col]
        ok = np.flatnonzero(column > _RATIO_EPS)
        if ok.size == 0:  # cannot happen in phase 1 (objective bounded below)
            break
        ratios = T[ok, -1] / column[ok]
        best = ratios.min()
        ties = ok[ratios <= best + _PIVOT_EPS * max(1.0, abs(best))]
        row = min(ties, key=lambda i: basis[i])
        _pivot(T, row, col)
        basis[row] = col
        it += 1

    objective = max(float(-T[m, -1]), 0.0)
    if objective > tol:
        ys = 1.0 - T[m, n:n + m]
        return LPResult(False, None, objective, ys * rowmul, float('nan'), it, tol)

    x = np.zeros(n)
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i, -1]
    x = _polish(As, bs, x, basis, n)
    residual = float(np.abs(As @ x - bs).max(initial=0.0))
    return LPResult(True, x, objective, None, residual, it, tol)


def _polish(As, bs, x, basis, n):
    """Re-solve the basic columns directly; keep whichever fits better."""
    x = np.where(x < 0, 0.0, x)
    cols = [j for j in basis if j < n]
    if not cols:
        return x
    sol, *_ = np.linalg.lstsq(As[:, cols], bs, rcond=None)
    if sol.min(initial=0.0) < -1e-12:
        return x
    y = np.zeros(n)
    y[cols] = np.maximum(sol, 0.0)
    if np.abs(As @ y - bs).max() < np.abs(As @ x - bs).max():
        return y
    return x
