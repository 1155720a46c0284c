from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from conftest import load_fixture
from normalspec.convex import ConvexFunction
from normalspec.errors import (AlreadyFull, ArgumentError, CombinatorialBound,
                               LengthMismatch, NotMajorized)
from normalspec.majorization import (BistochasticWitness, as_family, hlp_check, majorize,
                                     petrov_extend, point_in_hull, prec_check,
                                     prec_ds_check, projection_probe, t_transform_witness)

EXAMPLE_X = [(12, 12), (12, 12), (5, 3), (3, 5)]
EXAMPLE_Y = [(8, 16), (16, 8), (0, 0), (8, 8)]


# ------------------------------------------------------------------ oracles

def in_hull_highs(p, pts):
    pts = np.asarray(pts, dtype=float)
    A = np.vstack([pts.T, np.ones(len(pts))])
    b = np.append(p, 1.0)
    return linprog(np.zeros(len(pts)), A_eq=A, b_eq=b, bounds=(0, None),
                   method='highs').status == 0


def prec_levels_by_enumeration(X, Y):
    """Level verdicts of the hull order, listing every subset sum explicitly."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    out = {}
    for k in range(1, len(X) + 1):
        ysums = np.array([Y[list(s)].sum(axis=0) for s in combinations(range(len(Y)), k)])
        out[k] = all(in_hull_highs(X[list(s)].sum(axis=0), ysums)
                     for s in combinations(range(len(X)), k))
    return out


def ds_feasible_highs(X, Y):
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    l, m, d = len(X), len(Y), Y.shape[1]
    rows, rhs = [], []
    for i in range(m):
        r = np.zeros(m * m); r[i * m:(i + 1) * m] = 1; rows.append(r); rhs.append(1)
        r = np.zeros(m * m); r[i::m] = 1; rows.append(r); rhs.append(1)
    for i in range(l):
        for c in range(d):
            r = np.zeros(m * m); r[i * m:(i + 1) * m] = Y[:, c]; rows.append(r); rhs.append(X[i, c])
    res = linprog(np.zeros(m * m), A_eq=np.array(rows), b_eq=np.array(rhs), bounds=(0, None),
                  method='highs')
    return res.status == 0


def random_doubly_stochastic(rng, m, terms=4):
    S = np.zeros((m, m))
    w = rng.dirichlet(np.ones(terms))
    for t in w:
        S[np.arange(m), rng.permutation(m)] += t
    return S


# ------------------------------------------------------------------ families

def test_complex_input_embeds_in_plane():
    F = as_family(np.array([1 + 2j, -1j]))
    np.testing.assert_array_equal(F, [[1, 2], [0, -1]])
    assert as_family([1.0, 2.0]).shape == (2, 1)


def test_family_dimension_mismatch():
    with pytest.raises(ArgumentError):
        as_family([[1, 2]], dim=3)


# ------------------------------------------------------------------ point_in_hull

def test_point_in_hull_examples():
    pts = [(0, 0), (1, 0), (0, 1)]
    ok, t = point_in_hull((0, 0), pts)
    assert ok and t[0] == pytest.approx(1)
    ok, t = point_in_hull((1 / 3, 1 / 3), pts)
    assert ok
    np.testing.assert_allclose(t, 1 / 3, atol=1e-12)
    assert not point_in_hull((3, 0), pts)[0]


def test_point_in_degenerate_hull():
    assert point_in_hull(0.5 + 1e-15j, np.array([0, 1 + 0j]))[0]
    assert not point_in_hull(0.5 + 1e-3j, np.array([0, 1 + 0j]))[0]


# ------------------------------------------------------------------ hull order

def test_counterexample_hull_order_holds_but_not_doubly_stochastic():
    r = majorize(EXAMPLE_X, EXAMPLE_Y)
    assert r.prec is True
    assert all(r.levels.values())
    assert r.prec_ds is False
    assert r.ds_objective > 1e-7
    assert prec_levels_by_enumeration(EXAMPLE_X, EXAMPLE_Y) == r.levels
    assert not ds_feasible_highs(EXAMPLE_X, EXAMPLE_Y)


def test_identity_family():
    y = [(1, 0), (0, 2), (-1, -1)]
    r = majorize(y, y)
    assert r.prec and r.prec_ds
    np.testing.assert_allclose(r.witness.S, np.eye(3), atol=1e-9)


def test_level_one_failure_certificate():
    y = np.array([(0, 0), (1, 0), (0, 1)], float)
    r = prec_check([(3, 0)], y)
    assert r.prec is False
    c = r.certificate
    assert c.level == 1 and c.subset == (0,)
    # the direction strictly separates the point from every member of y
    assert c.direction @ c.point > (y @ c.direction).max() + 1e-9


@given(st.integers(1, 4), st.integers(0, 2), st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_hull_order_agrees_with_enumeration(l, extra, d, seed):
    rng = np.random.default_rng(seed)
    m = l + extra
    Y = rng.integers(-3, 4, (m, d)).astype(float)
    if rng.random() < 0.5:
        S = random_doubly_stochastic(rng, m)
        X = (S @ Y)[:l]
    else:
        X = rng.integers(-3, 4, (l, d)).astype(float)
    r = prec_check(X, Y)
    assert r.levels == prec_levels_by_enumeration(X, Y)
    if not r.prec:
        c = r.certificate
        ysums = np.array([Y[list(s)].sum(axis=0) for s in combinations(range(m), c.level)])
        assert c.direction @ c.point > (ysums @ c.direction).max() - 1e-9


def test_combinatorial_bound():
    rng = np.random.default_rng(0)
    with pytest.raises(CombinatorialBound):
        prec_check(rng.random((3, 2)), rng.random((15, 2)))
    with pytest.raises(ArgumentError):
        prec_check(rng.random((4, 2)), rng.random((3, 2)))


# ------------------------------------------------------------------ doubly stochastic order

def test_hlp_case_witness():
    r = prec_ds_check([[1.0], [1.0]], [[2.0], [0.0]])
    assert r.prec_ds
    np.testing.assert_allclose(r.witness.S, 0.5, atol=1e-9)


def test_mean_point_has_uniform_row():
    y = np.array([(0, 0), (3, 0), (0, 3)], float)
    r = prec_ds_check([y.mean(axis=0)], y)
    assert r.prec_ds
    np.testing.assert_allclose(r.witness.S[0], 1 / 3, atol=1e-9)


@given(st.integers(2, 6), st.integers(0, 2**31 - 1))
def test_doubly_stochastic_implies_hull_order(m, seed):
    rng = np.random.default_rng(seed)
    Y = rng.uniform(-2, 2, (m, 2))
    X = rng.uniform(-2, 2, (m, 2)) if rng.random() < 0.3 else random_doubly_stochastic(rng, m) @ Y
    ds = prec_ds_check(X, Y)
    assert ds.prec_ds == ds_feasible_highs(X, Y)
    if ds.prec_ds:
        assert prec_check(X, Y).prec
        np.testing.assert_allclose(ds.witness.S @ Y, ds.extended, atol=1e-12)
        np.testing.assert_allclose(ds.extended[:m], X, atol=1e-7)


@pytest.mark.parametrize('seed', range(10))
def test_sherman_direction(seed):
    rng = np.random.default_rng(seed)
    m = 5
    l = m if seed % 2 == 0 else 3
    Y = rng.uniform(-2, 2, m) + 1j * rng.uniform(-2, 2, m)
    X = (random_doubly_stochastic(rng, m) @ Y)[:l]
    assert prec_ds_check(X, Y).prec_ds
    for _ in range(20):
        c = complex(*rng.uniform(-2, 2, 2))
        h = complex(*rng.uniform(-1, 1, 2))
        for f in (ConvexFunction('power', center=c, q=1), ConvexFunction('power', center=c, q=2),
                  ConvexFunction('exp', h=h)):
            # l < m is covered because every member of the battery is nonnegative
            assert f(X).sum() <= f(Y).sum() + 1e-9


@pytest.mark.parametrize('m', [3, 4, 5, 6])
def test_permutation_closure(m):
    rng = np.random.default_rng(m)
    ang = np.sort(rng.uniform(0, 2 * np.pi, m))
    Y = np.column_stack([np.cos(ang), np.sin(ang)])  # convex position
    P = np.eye(m)[rng.permutation(m)]
    r = prec_ds_check(P @ Y, Y)
    assert r.prec_ds
    # vertices admit only trivial representations, so the witness is P itself
    np.testing.assert_allclose(r.witness.S, P, atol=1e-9)


def test_simplex_case():
    rng = np.random.default_rng(77)
    exercised = 0
    for trial in range(60):
        d = 1 + trial % 3
        Y = rng.uniform(-1, 1, (d + 1, d))  # affinely independent almost surely
        shrink = rng.uniform(0, 1.2)
        X = Y.mean(axis=0) + shrink * (rng.uniform(-1, 1, (d + 1, d)))
        X += (Y.sum(axis=0) - X.sum(axis=0)) / (d + 1)
        if prec_check(X, Y).prec:
            exercised += 1
            assert prec_ds_check(X, Y).prec_ds
    assert exercised >= 10


def test_three_point_equivalence():
    rng = np.random.default_rng(2024)
    agree = 0
    both_true = 0
    for _ in range(1000):
        Y = rng.uniform(-1, 1, (3, 2))
        if rng.random() < 0.5:
            X = random_doubly_stochastic(rng, 3) @ Y
            X += rng.normal(scale=0.02, size=X.shape) * (rng.random() < 0.5)
        else:
            X = rng.uniform(-1, 1, (3, 2))
        X += (Y.sum(axis=0) - X.sum(axis=0)) / 3
        a = prec_check(X, Y).prec
        b = prec_ds_check(X, Y).prec_ds
        agree += a == b
        both_true += a and b
    assert agree == 1000
    assert both_true > 100  # the sample exercises both verdicts


def test_bistochastic_witness_validation():
    with pytest.raises(ArgumentError):
        BistochasticWitness.from_matrix([[1, 0.5], [0, 0.5]])
    w = BistochasticWitness.from_matrix(np.full((3, 3), 1 / 3))
    assert w.row_err < 1e-15


def test_diagonals_of_normal_matrix_fixture():
    fx = load_fixture('diagonal_nonconvex.json')
    S = np.array(fx['S'])
    lam = np.array([complex(*z) for z in fx['lambda']])
    alpha = np.array([complex(*z) for z in fx['alpha']])
    BistochasticWitness.from_matrix(S)
    np.testing.assert_allclose(S @ lam, alpha, atol=1e-15)
    # unistochastic 3x3 needs the square roots of s_1j s_2j to form a triangle
    sides = np.sort(np.sqrt(S[0] * S[1]))
    assert sides[2] > sides[0] + sides[1]
    # and S is the only doubly stochastic matrix carrying lam to alpha
    A, b = [], []
    for i in range(3):
        r = np.zeros(9); r[3 * i:3 * i + 3] = 1; A.append(r); b.append(1)
        r = np.zeros(9); r[i::3] = 1; A.append(r); b.append(1)
        for part in (np.real, np.imag):
            r = np.zeros(9); r[3 * i:3 * i + 3] = part(lam); A.append(r); b.append(part(alpha[i]))
    A, b = np.array(A), np.array(b)
    for j in range(9):
        c = np.zeros(9); c[j] = 1
        lo = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method='highs').fun
        hi = -linprog(-c, A_eq=A, b_eq=b, bounds=(0, None), method='highs').fun
        assert hi - lo <= 1e-9
        assert lo == pytest.approx(S.ravel()[j], abs=1e-9)


# ------------------------------------------------------------------ scalar majorization

def test_hlp_examples():
    assert hlp_check([1, 1], [2, 0])
    assert not hlp_check([3, 0], [2, 1])
    assert hlp_check([0.3, 2, -1], [0.3, 2, -1])
    assert hlp_check([1], [2, 0], strict=False)
    with pytest.raises(LengthMismatch):
        hlp_check([1], [2, 0])
    with pytest.raises(LengthMismatch):
        hlp_check([1, 1, 1], [2, 0], strict=False)


def test_weak_order_ignores_totals():
    assert hlp_check([1, 0], [2, 0], strict=False)
    assert not hlp_check([1, 0], [2, 0], strict=True)


def test_t_transform_examples():
    w, steps = t_transform_witness([1, 1], [2, 0])
    np.testing.assert_allclose(w.S, 0.5)
    assert len(steps) == 1 and steps[0][2] == pytest.approx(0.5)
    w, _ = t_transform_witness([2, 2, 2], [3, 2, 1])
    np.testing.assert_allclose(w.S @ [3, 2, 1], [2, 2, 2], atol=1e-12)
    alpha = np.array([4.0, -1.0, 2.5, 0.0])
    perm = [2, 0, 3, 1]
    w, steps = t_transform_witness(alpha[perm], alpha)
    assert steps == []
    np.testing.assert_array_equal(w.S, np.eye(4)[perm])


def test_t_transform_requires_majorization():
    with pytest.raises(NotMajorized):
        t_transform_witness([3, 0], [2, 1])


@given(st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_t_transform_step_budget(m, seed):
    rng = np.random.default_rng(seed)
    alpha = rng.normal(size=m)
    beta = random_doubly_stochastic(rng, m) @ alpha
    w, steps = t_transform_witness(beta, alpha)
    assert len(steps) <= max(m - 1, 0)
    np.testing.assert_allclose(w.S @ alpha, beta, atol=1e-8)


# ------------------------------------------------------------------ completion and probes

def test_petrov_extend_examples():
    y = np.array([(0, 0), (2, 0), (0, 2)], float)
    np.testing.assert_allclose(petrov_extend(np.zeros((0, 2)), y), [y.mean(axis=0)])
    y2 = y[:2]
    np.testing.assert_allclose(petrov_extend([y2.mean(axis=0)], y2)[1], y2.mean(axis=0))
    ext = petrov_extend(EXAMPLE_X[:3], EXAMPLE_Y)
    np.testing.assert_allclose(ext[3], (3, 5))
    assert prec_check(ext, EXAMPLE_Y).prec
    with pytest.raises(AlreadyFull):
        petrov_extend(EXAMPLE_X, EXAMPLE_Y)


@given(st.integers(2, 5), st.integers(0, 2**31 - 1))
def test_petrov_extension_keeps_hull_order(m, seed):
    rng = np.random.default_rng(seed)
    Y = rng.uniform(-1, 1, (m, 2))
    X = (random_doubly_stochastic(rng, m) @ Y)[:m - 1]
    assert prec_check(petrov_extend(X, Y), Y).prec


def test_projection_probe():
    rng = np.random.default_rng(1)
    dirs = rng.normal(size=(64, 2))
    assert projection_probe(EXAMPLE_X, EXAMPLE_Y, dirs) == (True, None)
    ok, h = projection_probe([(3, 0)], [(0, 0), (1, 0)], [(1, 0)])
    assert not ok and tuple(h) == (1, 0)
    assert projection_probe([(3, 0)], [(0, 0), (1, 0)], []) == (True, None)
