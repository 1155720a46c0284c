"""Batch front end: read a JSON problem file, write a JSON report.

Subcommands::

    normalspec solve-inverse IN OUT
    normalspec majorize IN OUT
    normalspec gauss-lucas IN OUT [--svg PATH]
    normalspec mason-shapiro IN OUT

Complex numbers are two-element ``[re, im]`` arrays in both directions.
Exit codes: 0 success, 2 when solve-inverse finds no normal solution,
1 for anything else (unreadable input, library error, a verification that
did not pass).  Reports are written atomically.
"""

import argparse
import datetime
import hashlib
import json
import math
import os
import sys
import tempfile
import time
from math import comb

import numpy as np

from . import __version__
from .convex import ConvexFunction, random_battery
from .errors import BreakdownBeforeCompletion, NormalSpecError, NotSolvable
from .gauss_lucas import (MAX_COMPOUND, block_row_sum_probe, debruijn_check,
                          dft_normal_witness, gl_witness, hull_corollary_check,
                          prodeq_check, schoenberg_check, sk_witness)
from .inverse import (SOLVABLE_TOL, VERIFY_TOL, principal_residual, quasi_jacobi,
                      residues, solve_inverse)
from .linalg import commutator_norm
from .lp import FEASIBILITY_TOL
from .majorization import majorize, point_in_hull
from .mason_shapiro import EIGEN_TOL, HULL_TOL, SLACK_TOL, ms_zero_report, rising
from .poly import ComplexPoly, from_roots
from .svg import root_scatter_svg

__all__ = ['main', 'build_parser', 'InputError']

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_SOLVABLE = 2

GL_RESIDUAL_TOL = 1e-7
GL_LAST_ROW_TOL = 1e-9
GL_STOCHASTIC_TOL = 1e-8
GL_LEVEL_TOL = 1e-6
PRODEQ_TOL = 1e-8
BLOCK_TOL = 1e-7
IDENTITY_TOL = 1e-8
NORMALITY_TOL = 1e-9


class InputError(Exception):
    """The problem file is missing, malformed or inconsistent."""


# ---------------------------------------------------------------- encoding

def _num(x):
    x = float(x) + 0.0  # folds -0.0 into 0.0
    return x if math.isfinite(x) else None


def _cplx(z):
    z = complex(z)
    return [_num(z.real), _num(z.imag)]


def _cvec(v):
    return [_cplx(z) for z in np.asarray(v).ravel()]


def _rmat(M):
    return [[_num(x) for x in row] for row in np.asarray(M, dtype=float)]


def _cmat(M):
    return [[_cplx(z) for z in row] for row in np.asarray(M, dtype=complex)]


def _verdict(ok, tol, measure=None, kind='max'):
    """A verdict is never reported without the tolerance it was judged at."""
    out = {'pass': bool(ok), 'tol': tol}
    if measure is not None:
        out['measure'] = _num(measure)
        out['rule'] = 'measure <= tol' if kind == 'max' else 'measure >= -tol'
    return out


# ---------------------------------------------------------------- decoding

def _parse_complex(v, where):
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v)):
        raise InputError(f'{where}: complex numbers must be [re, im] arrays, got {v!r}')
    z = complex(float(v[0]), float(v[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f'{where}: non-finite value')
    return z


def _parse_cvec(v, where):
    if not isinstance(v, list):
        raise InputError(f'{where}: expected a list of [re, im] pairs')
    return np.array([_parse_complex(t, f'{where}[{i}]') for i, t in enumerate(v)],
                    dtype=complex)


def _parse_family(v, where):
    if not isinstance(v, list) or not v:
        raise InputError(f'{where}: expected a nonempty list of points')
    rows = []
    for i, pt in enumerate(v):
        if (not isinstance(pt, list) or not pt
                or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in pt)):
            raise InputError(f'{where}[{i}]: a point is a nonempty list of numbers')
        rows.append([float(t) for t in pt])
    if len({len(r) for r in rows}) != 1:
        raise InputError(f'{where}: points have different dimensions')
    arr = np.array(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InputError(f'{where}: non-finite value')
    return arr


def _load(path):
    try:
        with open(path, 'rb') as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f'cannot read {path}: {exc.strerror}') from None
    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f'{path} is not valid JSON: {exc}') from None
    if not isinstance(data, dict):
        raise InputError('problem file must hold a JSON object')
    return data, hashlib.sha256(raw).hexdigest()


def _options(data, args):
    opts = data.get('options', {})
    if not isinstance(opts, dict):
        raise InputError('options must be an object')
    seed = args.seed if args.seed is not None else opts.get('seed', 0)
    tol = args.tol if args.tol is not None else opts.get('tol')
    k = args.k if args.k is not None else opts.get('k')
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise InputError(f'seed must be a nonnegative integer, got {seed!r}')
    if tol is not None and (not isinstance(tol, (int, float)) or not tol > 0):
        raise InputError(f'tol must be a positive number, got {tol!r}')
    if k is not None:
        if isinstance(k, int) and not isinstance(k, bool):
            k = [k]
        if not isinstance(k, list) or not all(isinstance(t, int) and not isinstance(t, bool)
                                              for t in k):
            raise InputError(f'k must be an integer list, got {k!r}')
    return {'seed': seed, 'tol': tol, 'k': k, 'battery': opts.get('battery')}


def _battery(spec, seed, scale):
    if spec is None:
        return random_battery(np.random.default_rng(seed), scale=scale, size=6)
    if not isinstance(spec, list):
        raise InputError('battery must be a list of descriptors')
    return [ConvexFunction.from_dict(d) for d in spec]


def _primary_poly(data):
    has_l, has_c = 'lambda' in data, 'coefficients' in data
    if has_l == has_c:
        raise InputError('exactly one of "lambda" and "coefficients" must be given')
    if has_l:
        lam = _parse_cvec(data['lambda'], 'lambda')
        if lam.size == 0:
            raise InputError('lambda is empty')
        return from_roots(lam), 'lambda'
    coeffs = _parse_cvec(data['coefficients'], 'coefficients')
    if coeffs.size == 0:
        raise InputError('coefficients is empty')
    return ComplexPoly(coeffs), 'coefficients'


# ---------------------------------------------------------------- commands

def cmd_solve_inverse(data, opts):
    if 'lambda' not in data or 'mu' not in data:
        raise InputError('solve-inverse needs "lambda" and "mu"')
    lam = _parse_cvec(data['lambda'], 'lambda')
    mu = _parse_cvec(data['mu'], 'mu')
    tol = opts['tol'] if opts['tol'] is not None else SOLVABLE_TOL
    c = residues(lam, mu)
    rep = {'lambda': _cvec(lam), 'mu': _cvec(mu), 'residues': _cvec(c)}
    try:
        model = solve_inverse(lam, mu, tol=tol)
    except NotSolvable as exc:
        rep['verdicts'] = {'solvable': _verdict(False, tol)}
        rep['offending_residue'] = {'index': exc.index + 1, 'value': _cplx(exc.value)}
        rep['message'] = str(exc)
        return rep, EXIT_NOT_SOLVABLE
    res = principal_residual(model, mu)
    comm = commutator_norm(model.matrix)
    try:
        H = _cmat(quasi_jacobi(model).H)
    except BreakdownBeforeCompletion as exc:
        H = {'unavailable': str(exc)}
    rep['verdicts'] = {
        'solvable': _verdict(True, tol),
        'principal_spectrum': _verdict(res <= VERIFY_TOL, VERIFY_TOL, res),
        'normal': _verdict(comm <= NORMALITY_TOL, NORMALITY_TOL, comm),
    }
    rep['weights'] = [_num(x) for x in model.weights]
    rep['U'] = _cmat(model.U)
    rep['A'] = _cmat(model.matrix)
    rep['hessenberg'] = H
    ok = all(v['pass'] for v in rep['verdicts'].values())
    return rep, EXIT_OK if ok else EXIT_ERROR


def cmd_majorize(data, opts):
    if 'x' not in data or 'y' not in data:
        raise InputError('majorize needs families "x" and "y"')
    x = _parse_family(data['x'], 'x')
    y = _parse_family(data['y'], 'y')
    tol = opts['tol'] if opts['tol'] is not None else FEASIBILITY_TOL
    r = majorize(x, y, tol=tol)
    rep = {
        'x': _rmat(x), 'y': _rmat(y),
        'prec': r.prec,
        'levels': {str(k): v for k, v in sorted(r.levels.items())},
        'prec_ds': r.prec_ds,
        'phase1_objective': _num(r.ds_objective),
        'tol': tol,
    }
    if r.certificate is not None:
        cert = r.certificate
        rep['certificate'] = {'level': cert.level,
                              'subset': [i + 1 for i in cert.subset],
                              'point': [_num(t) for t in cert.point],
                              'direction': [_num(t) for t in cert.direction]}
    if r.witness is not None:
        rep['witness'] = _rmat(r.witness.S)
        rep['witness_row_err'] = _num(r.witness.row_err)
        rep['witness_col_err'] = _num(r.witness.col_err)
        rep['extended_x'] = _rmat(r.extended)
    return rep, EXIT_OK


def _levels(n, requested):
    if requested is None:
        return [k for k in range(1, n) if comb(n, k) <= MAX_COMPOUND]
    for k in requested:
        if not 1 <= k <= n - 1:
            raise InputError(f'level {k} outside 1..{n - 1}')
    return sorted(set(requested))


def cmd_gauss_lucas(data, opts):
    p, source = _primary_poly(data)
    if p.degree < 2:
        raise InputError('gauss-lucas needs degree >= 2')
    seed = opts['seed']
    tol = opts['tol'] if opts['tol'] is not None else GL_RESIDUAL_TOL
    w = gl_witness(p, seed=seed)
    n = w.n
    S = w.S1.S
    last_dev = float(np.abs(S[-1] - 1.0 / n).max())
    stoch = max(w.S1.row_err, w.S1.col_err)
    inside = [bool(point_in_hull(m, w.lam, tol=HULL_TOL)[0]) for m in w.mu]
    verdicts = {
        'witness_residual': _verdict(w.residual <= tol, tol, w.residual),
        'last_row_uniform': _verdict(last_dev <= GL_LAST_ROW_TOL, GL_LAST_ROW_TOL, last_dev),
        'doubly_stochastic': _verdict(stoch <= GL_STOCHASTIC_TOL, GL_STOCHASTIC_TOL, stoch),
        'critical_points_in_hull': _verdict(all(inside), HULL_TOL),
    }
    scale = max(1.0, float(np.abs(w.lam).max()))
    battery = _battery(opts['battery'], seed, scale)
    alphas = (_parse_cvec(data['alpha'], 'alpha') if 'alpha' in data
              else np.zeros(1, dtype=complex))
    levels = []
    for k in _levels(n, opts['k']):
        lk = sk_witness(w, k)
        block = block_row_sum_probe(w, k)
        entry = {
            'k': k,
            'index_sets': [[i + 1 for i in s] for s in lk.index_sets],
            'Sk': _rmat(lk.Sk),
            'identity': _verdict(lk.residual <= GL_LEVEL_TOL, GL_LEVEL_TOL, lk.residual),
            'block_row_sum': {'measured': _num(block.measured), 'spread': _num(block.spread),
                              'k_over_n': _num(block.k_over_n),
                              'constant': _verdict(block.spread <= BLOCK_TOL, BLOCK_TOL,
                                                   block.spread)},
        }
        if np.abs(w.lam).max() <= 12:
            dev = max(prodeq_check(w.lam, w.mu, a, k) for a in alphas)
            entry['product_identity'] = _verdict(dev <= PRODEQ_TOL, PRODEQ_TOL, dev)
        else:
            entry['product_identity'] = {'skipped': 'roots exceed modulus 12'}
        slacks = []
        for a in alphas:
            for f, left, right, sl in debruijn_check(p, k, a, battery, lam=w.lam, mu=w.mu):
                slacks.append({'f': f.to_dict(), 'alpha': _cplx(a), 'left': _num(left),
                               'right': _num(right), 'slack': _num(sl)})
        worst = min(s['slack'] for s in slacks) if slacks else 0.0
        entry['averaged_convex'] = {'slacks': slacks,
                                    'verdict': _verdict(worst >= -SLACK_TOL, SLACK_TOL, worst,
                                                        kind='min')}
        levels.append(entry)

    centered = w.lam - w.lam.mean()
    sch = schoenberg_check(centered, seed=seed)
    dft = dft_normal_witness(centered, seed=seed)
    dft_scale = max(1.0, sch.scale)
    rep = {
        'source': source,
        'coefficients': _cvec(p.coeffs),
        'lambda': _cvec(w.lam),
        'mu': _cvec(w.mu),
        'mu_n': _cplx(w.mu_n),
        'S1': _rmat(S),
        'W': _cmat(w.W),
        'verdicts': verdicts,
        'hull_corollary': hull_corollary_check(w.lam, w.mu),
        'levels': levels,
        'schoenberg': {
            'centered_by': _cplx(w.lam.mean()),
            'lhs': _num(sch.lhs), 'rhs': _num(sch.rhs), 'slack': _num(sch.slack),
            'collinear': sch.collinear, 'equality': sch.equality,
            'inequality': _verdict(sch.slack >= -SLACK_TOL * max(1.0, sch.scale), SLACK_TOL,
                                   sch.slack, kind='min'),
        },
        'dft_witness': {
            'A': _cmat(dft.A),
            'identity': _verdict(dft.identity_slack <= IDENTITY_TOL * dft_scale,
                                 IDENTITY_TOL * dft_scale, dft.identity_slack),
            'principal_residual': _num(dft.charpoly_residual),
        },
    }
    checks = list(verdicts.values())
    for e in levels:
        checks += [e['identity'], e['averaged_convex']['verdict'],
                   e['block_row_sum']['constant']]
        if 'pass' in e['product_identity']:
            checks.append(e['product_identity'])
    checks += [rep['schoenberg']['inequality'], rep['dft_witness']['identity']]
    ok = all(c['pass'] for c in checks)
    return rep, EXIT_OK if ok else EXIT_ERROR


def cmd_mason_shapiro(data, opts):
    if 'coefficients' not in data:
        raise InputError('mason-shapiro needs the coefficients of Q')
    if 'lambda' in data:
        raise InputError('exactly one of "lambda" and "coefficients" must be given')
    Q = ComplexPoly(_parse_cvec(data['coefficients'], 'coefficients'))
    m = data.get('m', data.get('options', {}).get('m'))
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InputError(f'"m" must be a nonnegative integer, got {m!r}')
    seed = opts['seed']
    tol = opts['tol'] if opts['tol'] is not None else FEASIBILITY_TOL
    battery = None
    if opts['battery'] is not None:
        battery = _battery(opts['battery'], seed, 1.0)
    r = ms_zero_report(Q, m, seed=seed, battery=battery, tol=tol)
    worst = min((s for *_, s in r.battery), default=0.0)
    verdicts = {
        'eigen_residual': _verdict(r.eigen_residual <= EIGEN_TOL, EIGEN_TOL, r.eigen_residual),
        'zeros_in_hull': _verdict(r.hull_ok, HULL_TOL),
        'averaged_convex': _verdict(worst >= -SLACK_TOL, SLACK_TOL, worst, kind='min'),
        'stochastic_witness': _verdict(r.stochastic_ok, tol,
                                       None if r.lp is None else r.lp.objective),
    }
    rep = {
        'Q': _cvec(r.Q.coeffs),
        'k': r.k,
        'm': m,
        'eigenvalue': rising(m, r.k),
        'p_m': _cvec(r.p.coeffs),
        'zeros_Q': _cvec(r.z),
        'zeros_p_m': _cvec(r.w),
        'multiple_roots_in_q': r.multiple_roots_in_q,
        'hull': r.hull,
        'battery': [{'f': f.to_dict(), 'mean_w': _num(a), 'mean_z': _num(b), 'slack': _num(s)}
                    for f, a, b, s in r.battery],
        'S': None if r.S is None else _rmat(r.S),
        'verdicts': verdicts,
    }
    ok = all(v['pass'] for v in verdicts.values())
    return rep, EXIT_OK if ok else EXIT_ERROR


COMMANDS = {
    'solve-inverse': cmd_solve_inverse,
    'majorize': cmd_majorize,
    'gauss-lucas': cmd_gauss_lucas,
    'mason-shapiro': cmd_mason_shapiro,
}


# ---------------------------------------------------------------- plumbing

def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix='.normalspec-', suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _int_list(text):
    try:
        return [int(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'not an integer list: {text!r}') from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog='normalspec',
        description='Normal-matrix spectral witnesses: inverse problems, '
                    'majorization, critical points of polynomials.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)
    helps = {
        'solve-inverse': 'normal matrix with spectrum lambda whose leading block has spectrum mu',
        'majorize': 'decide the hull order and the doubly stochastic order of two families',
        'gauss-lucas': 'doubly stochastic witnesses between the roots of p and of p\'',
        'mason-shapiro': 'eigenpolynomial of f -> (Q f)^(k) and where its zeros lie',
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text, description=text)
        sp.add_argument('input', metavar='IN', help='JSON problem file')
        sp.add_argument('output', metavar='OUT', help='JSON report to write')
        sp.add_argument('--tol', type=float, default=None,
                        help='override the command\'s primary tolerance')
        sp.add_argument('--seed', type=int, default=None, help='seed for root finding and sampling')
        sp.add_argument('--k', type=_int_list, default=None, metavar='K[,K...]',
                        help='levels to evaluate (gauss-lucas)')
        sp.add_argument('--svg', default=None, metavar='PATH',
                        help='also write a root scatter plot (gauss-lucas)')
        sp.add_argument('--no-timestamp', action='store_true',
                        help='omit wall-clock fields so reports are byte-reproducible')
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        data, digest = _load(args.input)
        opts = _options(data, args)
        body, code = COMMANDS[args.command](data, opts)
    except (InputError, NormalSpecError) as exc:
        print(f'normalspec {args.command}: {exc}', file=sys.stderr)
        return EXIT_ERROR

    report = {
        'command': {'name': args.command, 'input': os.path.basename(args.input),
                    'seed': opts['seed'], 'tol': opts['tol'], 'k': opts['k'],
                    'version': __version__},
        'input_sha256': digest,
        'exit_code': code,
    }
    report.update(body)
    if not args.no_timestamp:
        report['generated_at'] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        report['elapsed_seconds'] = time.perf_counter() - start
    try:
        _write_atomic(args.output, json.dumps(report, indent=2, allow_nan=False) + '\n')
        if args.svg and args.command == 'gauss-lucas':
            _write_atomic(args.svg, root_scatter_svg(
                np.array([complex(*z) for z in body['lambda']]),
                np.array([complex(*z) for z in body['mu']]),
                title='roots of p (dots), of p\' (crosses), hull of the roots of p'))
    except OSError as exc:
        print(f'normalspec {args.command}: cannot write output: {exc.strerror}', file=sys.stderr)
        return EXIT_ERROR
    if code == EXIT_NOT_SOLVABLE:
        print(f'normalspec {args.command}: {body.get("message", "not solvable")}',
              file=sys.stderr)
    elif code != EXIT_OK:
        print(f'normalspec {args.command}: a verification did not pass; see the report',
              file=sys.stderr)
    return code


if __name__ == '__main__':
    sys.exit(main())
