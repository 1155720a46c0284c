"""Eigenpolynomials of the operator f -> (Q f)^(k) and where their zeros lie.

For monic Q of degree k the operator maps polynomials of degree <= m to
themselves and is upper triangular in the monomial basis, with diagonal
``(j+1)(j+2)...(j+k)``.  The diagonal is strictly increasing, so there is a
unique monic eigenpolynomial ``p_m`` of each degree m, found by
back-substitution.  Its zeros lie in the convex hull of the zeros of Q, and
more precisely ``w = S z`` for an m x k matrix S with unit row sums and
column sums m/k.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npp

from .convex import averaged_slack, random_battery
from .errors import ArgumentError, MultipleRootsInQ, NotMonic
from .gauss_lucas import _battery
from .lp import FEASIBILITY_TOL, LPResult, lp_feasible
from .majorization import point_in_hull
from .poly import ComplexPoly, as_poly, from_roots, merge_multiple_roots, roots

__all__ = ['TqOperator', 'MSReport', 'rising', 'tq_matrix', 'eigen_poly',
           'eigen_residual', 'ms_zero_report', 'HULL_TOL', 'SLACK_TOL',
           'EIGEN_TOL']

HULL_TOL = 1e-8
SLACK_TOL = 1e-9
EIGEN_TOL = 1e-9
MONIC_TOL = 1e-12
MULTIPLE_ROOT_GAP = 1e-6


def rising(j, k):
    """(j+1)(j+2)...(j+k) as an exact integer."""
    out = 1
    for i in range(j + 1, j + k + 1):
        out *= i
    return out


@dataclass(frozen=True)
class TqOperator:
    """Matrix of f -> (Q f)^(k) on coefficient vectors of degree <= m."""
    Q: ComplexPoly
    m: int
    M: np.ndarray

    @property
    def k(self):
        return self.Q.degree

    def eigenvalue(self, j=None):
        return rising(self.m if j is None else j, self.k)

    def apply(self, p):
        """Coefficients of (Q p)^(k), padded to length m + 1."""
        c = np.zeros(self.m + 1, dtype=complex)
        coeffs = as_poly(p).coeffs
        if coeffs.size > self.m + 1:
            raise ArgumentError(f'degree {coeffs.size - 1} exceeds {self.m}')
        c[:coeffs.size] = coeffs
        return self.M @ c


def tq_matrix(Q, m):
    """Column j holds the coefficients of (Q z^j)^(k), of degree j."""
    Q = as_poly(Q)
    k = Q.degree
    if k < 1:
        raise ArgumentError('Q must have degree >= 1')
    if abs(Q.leading - 1) > MONIC_TOL:
        raise NotMonic(f'leading coefficient of Q is {Q.leading}, expected 1')
    if m < 0:
        raise ArgumentError(f'm must be >= 0, got {m}')
    M = np.zeros((m + 1, m + 1), dtype=complex)
    for j in range(m + 1):
        shifted = np.concatenate([np.zeros(j, dtype=complex), Q.coeffs])
        col = npp.polyder(shifted, k)
        M[:j + 1, j] = col[:j + 1]
    return TqOperator(Q, m, M)


def eigen_poly(op):
    """Monic degree-m eigenpolynomial by back-substitution."""
    m = op.m
    M = op.M
    lam = M[m, m]
    c = np.zeros(m + 1, dtype=complex)
    c[m] = 1.0
    for i in range(m - 1, -1, -1):
        c[i] = -(M[i, i + 1:] @ c[i + 1:]) / (M[i, i] - lam)
    return ComplexPoly(c)


def eigen_residual(op, p):
    """||T p - lam_m p||_inf relative to ||M||_inf ||p||_inf."""
    c = np.zeros(op.m + 1, dtype=complex)
    c[:p.coeffs.size] = p.coeffs
    r = op.M @ c - op.eigenvalue() * c
    scale = max(1.0, np.abs(op.M).sum(axis=1).max() * np.abs(c).max())
    return float(np.abs(r).max() / scale)


@dataclass
class MSReport:
    """Zero-location checks for the degree-m eigenpolynomial of Q.

    ``battery`` holds ``(f, mean over w, mean over z, slack)``; ``S`` is the
    m x k matrix found by the LP, or None when it is infeasible.
    """
    Q: ComplexPoly
    m: int
    p: ComplexPoly
    eigen_residual: float
    w: np.ndarray
    z: np.ndarray
    hull: list
    battery: list
    lp: LPResult | None
    S: np.ndarray | None
    multiple_roots_in_q: bool
    seed: int
    tolerances: dict = field(default_factory=dict)

    @property
    def k(self):
        return self.Q.degree

    @property
    def hull_ok(self):
        return all(self.hull)

    @property
    def battery_ok(self):
        return all(s >= -SLACK_TOL for *_, s in self.battery)

    @property
    def stochastic_ok(self):
        return self.lp is None or self.lp.feasible


def _has_multiple(z):
    if z.size < 2:
        return False
    gaps = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(gaps, np.inf)
    return bool(gaps.min() <= MULTIPLE_ROOT_GAP * max(1.0, np.abs(z).max()))


def stochastic_witness_lp(w, z, tol=FEASIBILITY_TOL):
    """LP for S >= 0 (m x k), unit row sums, column sums m/k, S z = w."""
    m, k = w.size, z.size
    nv = m * k
    rows, rhs = [], []
    for i in range(m):
        r = np.zeros(nv)
        r[i * k:(i + 1) * k] = 1.0
        rows.append(r)
        rhs.append(1.0)
    for j in range(k):
        r = np.zeros(nv)
        r[j::k] = 1.0
        rows.append(r)
        rhs.append(m / k)
    for part in (np.real, np.imag):
        for i in range(m):
            r = np.zeros(nv)
            r[i * k:(i + 1) * k] = part(z)
            rows.append(r)
            rhs.append(part(w[i]))
    rs = np.zeros(len(rows))
    rs[m + k:] = max(np.abs(z).max(initial=0.0), np.abs(w).max(initial=0.0),
                     np.finfo(float).tiny)
    return lp_feasible(np.array(rows), np.array(rhs), tol=tol, row_scale=rs)


def _affine_frame(Q, seed):
    """Zeros of Q and the frame ``z = c + s u`` that centres and normalizes them."""
    z = merge_multiple_roots(Q, roots(Q, seed=seed))
    c = complex(z.mean())
    s = float(np.abs(z - c).max())
    return z, c, s


def _normalized(z, c, s):
    """Monic polynomial in u whose zeros are ``(z - c) / s``."""
    return from_roots((z - c) / s)


def ms_zero_report(Q, m, seed=0, battery=None, strict=False, tol=FEASIBILITY_TOL):
    """Eigenpolynomial p_m of Q and the checks on its zeros w.

    (a) every w_j lies in the convex hull of the zeros z of Q;
    (b) mean f(w) <= mean f(z) for each convex f of the battery;
    (c) an m x k matrix S >= 0 with unit row sums and column sums m/k
        satisfies w = S z.

    The operator commutes with affine changes of variable: with
    ``z = c + s u`` and ``Q(z) = s**k Qn(u)`` one has
    ``p_m(z) = s**m pn_m(u)``.  The zeros w are therefore computed from the
    eigenpolynomial of ``Qn`` in the frame centred at the mean of z and
    scaled to unit spread, where they are well conditioned even when the
    zeros of Q sit in a small cluster far from the origin.  ``Qn`` is built
    from the computed zeros of Q (not by expanding ``Q(c + s u)``, which
    cancels badly for such clusters), so w and z describe the same
    polynomial, one within the root finder's backward error of Q.

    A repeated root of Q is flagged in ``multiple_roots_in_q``; with
    ``strict=True`` it raises MultipleRootsInQ instead.  The default battery
    is drawn from ``seed`` at the length scale of z.
    """
    op = tq_matrix(Q, m)
    Q = op.Q
    p = eigen_poly(op)
    res = eigen_residual(op, p)
    z, c, s = _affine_frame(Q, seed)
    multiple = _has_multiple(z)
    if multiple and strict:
        raise MultipleRootsInQ('Q has a repeated root')
    if battery is None:
        scale = max(1.0, float(np.abs(z).max()))
        battery = random_battery(np.random.default_rng(seed), scale=scale, size=9)
    battery = _battery(battery)
    tols = {'hull': HULL_TOL, 'slack': SLACK_TOL, 'lp': tol, 'eigen_residual': EIGEN_TOL}
    if m == 0:
        w = np.zeros(0, dtype=complex)
        return MSReport(Q, m, p, res, w, z, [], [(f, 0.0, 0.0, 0.0) for f in battery],
                        None, np.zeros((0, z.size)), multiple, seed, tols)
    if s == 0:
        # Q = (z - c)^k, whose eigenpolynomials are (z - c)^m
        w = np.full(m, c)
    else:
        pn = eigen_poly(tq_matrix(_normalized(z, c, s), m))
        w = c + s * merge_multiple_roots(pn, roots(pn, seed=seed))
    hull = [bool(point_in_hull(wj, z, tol=HULL_TOL)[0]) for wj in w]
    slacks = [(f, *averaged_slack(f, w, z)) for f in battery]
    lp = stochastic_witness_lp(w, z, tol=tol)
    S = lp.x.reshape(m, z.size) if lp.feasible else None
    return MSReport(Q, m, p, res, w, z, hull, slacks, lp, S, multiple, seed, tols)
