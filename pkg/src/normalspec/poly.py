"""Polynomials over the complex plane.

Coefficients are stored in ascending order, ``coeffs[i]`` multiplying
``z**i``.  Root finding is an Aberth-Ehrlich simultaneous iteration with an
explicit seed, so repeated calls give bit-identical answers.
"""

import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.optimize import linear_sum_assignment

from .errors import ConstantPolynomial, NoConvergence, SampleTooCloseToRoot

__all__ = ['ComplexPoly', 'as_poly', 'from_roots', 'derivative', 'roots',
           'cauchy_bound', 'log_derivative_residue_check', 'match_roots',
           'root_match_tolerance', 'merge_multiple_roots']

MAX_SWEEPS = 500


class ComplexPoly:
    """Polynomial with complex coefficients, ascending degree.

    Trailing (highest-degree) exact zeros are trimmed so the leading
    coefficient is nonzero, except for the zero polynomial which keeps a
    single zero coefficient.
    """

    __slots__ = ('coeffs',)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError('coefficients must be a nonempty 1-d sequence')
        if not np.all(np.isfinite(c)):
            raise ValueError('coefficients must be finite')
        nz = np.flatnonzero(c)
        c = c[:nz[-1] + 1] if nz.size else c[:1]
        c.setflags(write=False)
        self.coeffs = c

    @property
    def degree(self):
        return self.coeffs.size - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __call__(self, z):
        return npp.polyval(z, self.coeffs)

    def __repr__(self):
        return f'ComplexPoly({self.coeffs.tolist()!r})'

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def monic(self):
        return ComplexPoly(self.coeffs / self.leading)

    def derivative(self):
        return derivative(self)

    def roots(self, seed=0):
        return roots(self, seed=seed)

    def allclose(self, other, rtol=1e-9, atol=0.0):
        other = as_poly(other)
        if other.degree != self.degree:
            return False
        return np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol)


def as_poly(p):
    return p if isinstance(p, ComplexPoly) else ComplexPoly(p)


def from_roots(rts):
    """Monic polynomial with the given roots (with multiplicity)."""
    rts = np.asarray(rts, dtype=complex).ravel()
    if rts.size == 0:
        return ComplexPoly([1.0])
    return ComplexPoly(npp.polyfromroots(rts))


def derivative(p):
    p = as_poly(p)
    if p.degree < 1:
        raise ConstantPolynomial('derivative requires degree >= 1')
    return ComplexPoly(npp.polyder(p.coeffs))


def cauchy_bound(p):
    """Cauchy's root radius: the positive root of |a_n| r^n = sum |a_i| r^i.

    Every root of ``p`` has modulus at most this value.
    """
    p = as_poly(p)
    n = p.degree
    if n < 1:
        return 0.0
    a = np.abs(p.coeffs[:-1] / p.leading)
    if not np.any(a):
        return 0.0
    # g(r) = r^n - sum a_i r^i has exactly one positive root; it is
    # increasing and convex beyond it, so Newton from the upper bound
    # 1 + max a_i decreases monotonically onto it.
    r = 1.0 + a.max()
    powers = np.arange(n)
    for _ in range(200):
        g = r ** n - np.sum(a * r ** powers)
        dg = n * r ** (n - 1) - np.sum(a[1:] * powers[1:] * r ** (powers[1:] - 1))
        step = g / dg
        r -= step
        if abs(step) <= 1e-15 * r:
            break
    return float(r)


def _eval_with_bound(a, z):
    """Horner for p(z), p'(z) and the roundoff scale sum |a_i| |z|^i."""
    p = a[-1]
    dp = 0j
    b = abs(a[-1])
    az = abs(z)
    for c in a[-2::-1]:
        dp = dp * z + p
        p = p * z + c
        b = b * az + abs(c)
    return p, dp, b


def roots(p, seed=0, max_sweeps=MAX_SWEEPS):
    """All roots of ``p`` by Aberth-Ehrlich iteration.

    Starting points sit on a circle whose radius is the Cauchy bound, with
    angles jittered by a generator seeded from ``seed``.  Exact zero roots
    are split off before iterating.

    Raises
    ------
    ConstantPolynomial
        if the degree is zero.
    NoConvergence
        if after ``max_sweeps`` sweeps some root still has backward error
        above ``1e-8`` relative to ``sum |a_i| |z|^i``.
    """
    p = as_poly(p)
    n = p.degree
    if n < 1:
        raise ConstantPolynomial('roots requires degree >= 1')
    a = p.coeffs / p.leading
    nzero = int(np.flatnonzero(a)[0])
    a = a[nzero:]
    m = a.size - 1
    out = np.zeros(n, dtype=complex)
    if m == 0:
        return out
    if m == 1:
        out[nzero:] = -a[0]
        return out

    rng = np.random.default_rng(seed)
    radius = cauchy_bound(ComplexPoly(a))
    angles = 2 * np.pi * (np.arange(m) + 0.25 + 0.1 * rng.random(m)) / m
    z = radius * (1.0 + 0.01 * rng.random(m)) * np.exp(1j * angles)

    eps = np.finfo(float).eps
    done = np.zeros(m, dtype=bool)
    for _ in range(max_sweeps):
        for i in range(m):
            if done[i]:
                continue
            pz, dpz, bound = _eval_with_bound(a, z[i])
            if abs(pz) <= 4 * m * eps * bound:
                done[i] = True
                continue
            if dpz == 0:
                z[i] += 1e-8 * (1 + abs(z[i]))
                continue
            ratio = pz / dpz
            diff = z[i] - np.delete(z, i)
            s = np.sum(1.0 / diff) if np.all(diff != 0) else 0.0
            w = ratio / (1.0 - ratio * s)
            z[i] -= w
            if abs(w) <= 4 * eps * abs(z[i]):
                done[i] = True
        if done.all():
            break

    for zi in z:
        pz, _, bound = _eval_with_bound(a, zi)
        if abs(pz) > 1e-8 * bound:
            raise NoConvergence(f'Aberth iteration did not converge in {max_sweeps} sweeps '
                                f'(residual {abs(pz):.3e} at {zi})')
    out[nzero:] = z
    return out


def match_roots(a, b):
    """Optimal matching of two equal-size multisets.

    Returns ``(perm, dist)`` with ``b[perm]`` aligned to ``a`` and ``dist``
    the largest matched distance.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        raise ValueError('multisets differ in size')
    if a.size == 0:
        return np.zeros(0, dtype=int), 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(a.size, dtype=int)
    perm[rows] = cols
    return perm, float(cost[rows, cols].max())


def root_match_tolerance(rts, base=1e-7, loose=1e-5):
    """Tolerance for multiset recovery, loosened near multiple roots.

    The discriminant is normalized by ``R**(n(n-1))`` with ``R`` the Cauchy
    bound of the polynomial built from ``rts``.
    """
    rts = np.asarray(rts, dtype=complex).ravel()
    n = rts.size
    if n < 2:
        return base
    R = max(cauchy_bound(from_roots(rts)), 1e-300)
    d = np.abs(rts[:, None] - rts[None, :]) / R
    iu = np.triu_indices(n, 1)
    with np.errstate(divide='ignore'):
        logdisc = 2 * np.sum(np.log(d[iu]))
    return loose if logdisc < np.log(1e-10) else base


def log_derivative_residue_check(p, samples, seed=0):
    """Largest gap between p'(z)/p(z) and sum 1/(z - root) over samples."""
    p = as_poly(p)
    rts = roots(p, seed=seed)
    samples = np.atleast_1d(np.asarray(samples, dtype=complex))
    if samples.size == 0:
        return 0.0
    gap = np.abs(samples[:, None] - rts[None, :])
    if gap.size and gap.min() < 1e-3:
        raise SampleTooCloseToRoot('sample within 1e-3 of a root')
    dp = derivative(p)
    lhs = dp(samples) / p(samples)
    rhs = np.sum(1.0 / (samples[:, None] - rts[None, :]), axis=1)
    return float(np.max(np.abs(lhs - rhs)))


def merge_multiple_roots(p, rts, link=0.1, tol=1e-14):
    """Replace numerically split multiple roots by one accurate value.

    An s-fold root comes back from any root finder as s points spread by
    about ``eps**(1/s)``.  Roots chained within ``link * max(1, max|root|)``
    form a candidate cluster of size s.  The candidate is refined by Newton
    on the (s-1)-th derivative, where an s-fold root is simple, and is
    accepted only if ``p`` and its first s - 2 derivatives vanish there to
    ``tol`` relative to ``sum |a_i| |z|^i``.  Clusters failing the test are
    left untouched.
    """
    p = as_poly(p)
    rts = np.asarray(rts, dtype=complex).ravel().copy()
    if rts.size < 2:
        return rts
    thresh = link * max(1.0, np.abs(rts).max())
    label = np.arange(rts.size)
    for i in range(rts.size):
        for j in range(i):
            if abs(rts[i] - rts[j]) < thresh:
                label[label == label[i]] = label[j]
    tiny = np.finfo(float).tiny
    for lab in np.unique(label):
        idx = np.flatnonzero(label == lab)
        s = idx.size
        if s < 2:
            continue
        ders = [p.coeffs]
        for _ in range(s):
            ders.append(npp.polyder(ders[-1]))
        c = rts[idx].mean()
        for _ in range(50):
            d = npp.polyval(c, ders[s])
            if d == 0:
                break
            step = npp.polyval(c, ders[s - 1]) / d
            c -= step
            if abs(step) <= 4 * np.finfo(float).eps * max(abs(c), 1.0):
                break
        ok = all(abs(npp.polyval(c, q)) <= tol * max(npp.polyval(abs(c), np.abs(q)), tiny)
                 for q in ders[:s - 1])
        if ok:
            rts[idx] = c
    return rts
