import json
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from conftest import DATA
from normalspec.cli import EXIT_ERROR, EXIT_NOT_SOLVABLE, EXIT_OK, main


def run(cmd, fixture, tmp_path, *extra):
    out = tmp_path / 'report.json'
    code = main([cmd, os.path.join(DATA, fixture), str(out), '--no-timestamp', *extra])
    rep = json.loads(out.read_text()) if out.exists() else None
    return code, rep


def cplx(pair):
    return complex(*pair)


# ------------------------------------------------------------ solve-inverse

def test_solve_inverse_ok(tmp_path):
    code, rep = run('solve-inverse', 'solve_inverse_ok.json', tmp_path)
    assert code == EXIT_OK and rep['exit_code'] == 0
    assert np.allclose([cplx(c) for c in rep['residues']], [0.5, 0.5])
    assert all(v['pass'] and 'tol' in v for v in rep['verdicts'].values())
    A = np.array([[cplx(z) for z in row] for row in rep['A']])
    assert np.allclose(np.linalg.eigvals(A[:-1, :-1]), [1])
    assert np.allclose(A @ A.conj().T, A.conj().T @ A, atol=1e-12)


def test_solve_inverse_not_solvable(tmp_path, capsys):
    code, rep = run('solve-inverse', 'solve_inverse_not_solvable.json', tmp_path)
    assert code == EXIT_NOT_SOLVABLE
    assert rep['offending_residue']['index'] == 2
    assert rep['verdicts']['solvable']['pass'] is False
    assert 'residue 2' in capsys.readouterr().err


def test_solve_inverse_needs_mu(tmp_path):
    bad = tmp_path / 'in.json'
    bad.write_text('{"lambda": [[0, 0], [1, 0]]}')
    assert main(['solve-inverse', str(bad), str(tmp_path / 'o.json')]) == EXIT_ERROR
    assert not (tmp_path / 'o.json').exists()


# ------------------------------------------------------------ majorize

def test_majorize_counterexample(tmp_path):
    code, rep = run('majorize', 'majorize_counterexample.json', tmp_path)
    assert code == EXIT_OK
    assert rep['prec'] is True and rep['prec_ds'] is False
    assert rep['phase1_objective'] > 1e-7


def test_majorize_identity(tmp_path):
    code, rep = run('majorize', 'majorize_identity.json', tmp_path)
    assert code == EXIT_OK
    assert rep['prec'] and rep['prec_ds']
    assert np.allclose(rep['witness'], np.eye(len(rep['x'])), atol=1e-9)


def test_majorize_oversized(tmp_path, capsys):
    code, rep = run('majorize', 'majorize_oversized.json', tmp_path)
    assert code == EXIT_ERROR and rep is None
    assert 'm = 20' in capsys.readouterr().err


# ------------------------------------------------------------ gauss-lucas

def test_gauss_lucas_cubic(tmp_path):
    code, rep = run('gauss-lucas', 'gauss_lucas_cubic.json', tmp_path)
    assert code == EXIT_OK
    S1 = np.array(rep['S1'])
    assert np.allclose(S1[-1], 1 / 3, atol=1e-9)
    assert rep['schoenberg']['equality'] is True
    assert all(v['pass'] for v in rep['verdicts'].values())


def test_gauss_lucas_two_points_svg(tmp_path):
    svg = tmp_path / 'plot.svg'
    code, rep = run('gauss-lucas', 'gauss_lucas_two_points.json', tmp_path, '--svg', str(svg))
    assert code == EXIT_OK
    assert np.allclose([cplx(z) for z in rep['mu']], [0], atol=1e-12)
    root = ET.fromstring(svg.read_bytes())
    ns = '{http://www.w3.org/2000/svg}'
    assert len(root.findall(ns + 'circle')) == 2
    assert len(root.findall(ns + 'path')) == 1
    assert len(root.findall(ns + 'polyline')) == 1


def test_gauss_lucas_strict_schoenberg(tmp_path):
    code, rep = run('gauss-lucas', 'gauss_lucas_strict.json', tmp_path)
    assert code == EXIT_OK
    sch = rep['schoenberg']
    assert sch['equality'] is False and sch['collinear'] is False
    assert abs(sch['slack'] - 2) < 1e-9


def test_gauss_lucas_levels_flag(tmp_path):
    code, rep = run('gauss-lucas', 'gauss_lucas_strict.json', tmp_path, '--k', '2')
    assert code == EXIT_OK
    assert [lv['k'] for lv in rep['levels']] == [2]
    code, _ = run('gauss-lucas', 'gauss_lucas_strict.json', tmp_path, '--k', '3')
    assert code == EXIT_ERROR


def test_gauss_lucas_both_primary_inputs(tmp_path):
    assert run('gauss-lucas', 'both_primary.json', tmp_path)[0] == EXIT_ERROR


# ------------------------------------------------------------ mason-shapiro

def test_mason_shapiro_linear(tmp_path):
    code, rep = run('mason-shapiro', 'mason_shapiro_linear.json', tmp_path)
    assert code == EXIT_OK
    assert np.allclose([cplx(c) for c in rep['p_m']], [-(0.5 - 0.25j), 1], atol=1e-12)


def test_mason_shapiro_square(tmp_path):
    code, rep = run('mason-shapiro', 'mason_shapiro_square.json', tmp_path)
    assert code == EXIT_OK
    assert np.allclose([cplx(c) for c in rep['p_m']], [0, 1], atol=1e-15)
    assert rep['multiple_roots_in_q'] is True


def test_mason_shapiro_constant(tmp_path):
    code, rep = run('mason-shapiro', 'mason_shapiro_constant.json', tmp_path)
    assert code == EXIT_OK
    assert rep['p_m'] == [[1.0, 0.0]]
    assert all(v['pass'] for v in rep['verdicts'].values())


def test_mason_shapiro_needs_m(tmp_path):
    bad = tmp_path / 'in.json'
    bad.write_text('{"coefficients": [[1, 0], [1, 0]]}')
    assert main(['mason-shapiro', str(bad), str(tmp_path / 'o.json')]) == EXIT_ERROR


# ------------------------------------------------------------ input errors

@pytest.mark.parametrize('fixture', ['malformed.json', 'bad_complex.json'])
@pytest.mark.parametrize('cmd', ['solve-inverse', 'gauss-lucas'])
def test_bad_input_files(tmp_path, cmd, fixture):
    code, rep = run(cmd, fixture, tmp_path)
    assert code == EXIT_ERROR and rep is None


def test_missing_input(tmp_path):
    assert main(['majorize', str(tmp_path / 'nope.json'), str(tmp_path / 'o.json')]) == EXIT_ERROR


@pytest.mark.parametrize('text', ['[1, 2]', '{"lambda": [[1, "x"], [0, 0]], "mu": [[0, 0]]}',
                                  '{"lambda": [[1, 0, 0], [0, 0]], "mu": [[0, 0]]}',
                                  '{"lambda": [[NaN, 0], [0, 0]], "mu": [[0, 0]]}',
                                  '{"lambda": [1, 0], "mu": [0]}'])
def test_rejects_non_pair_numbers(tmp_path, text):
    bad = tmp_path / 'in.json'
    bad.write_text(text)
    assert main(['solve-inverse', str(bad), str(tmp_path / 'o.json')]) == EXIT_ERROR


def test_unwritable_output(tmp_path):
    out = tmp_path / 'missing_dir' / 'o.json'
    code = main(['solve-inverse', os.path.join(DATA, 'solve_inverse_ok.json'), str(out)])
    assert code == EXIT_ERROR


# ------------------------------------------------------------ plumbing

def test_atomic_write_leaves_no_temp_files(tmp_path):
    run('gauss-lucas', 'gauss_lucas_cubic.json', tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == ['report.json']


def test_overwrites_existing_report(tmp_path):
    (tmp_path / 'report.json').write_text('old')
    code, rep = run('mason-shapiro', 'mason_shapiro_linear.json', tmp_path)
    assert code == EXIT_OK and rep['m'] == 1


def test_deterministic_reports(tmp_path):
    a, b = tmp_path / 'a', tmp_path / 'b'
    a.mkdir()
    b.mkdir()
    run('gauss-lucas', 'gauss_lucas_strict.json', a)
    run('gauss-lucas', 'gauss_lucas_strict.json', b)
    assert (a / 'report.json').read_bytes() == (b / 'report.json').read_bytes()


def test_seed_flag_recorded(tmp_path):
    _, rep = run('mason-shapiro', 'mason_shapiro_quartic.json', tmp_path, '--seed', '7')
    assert rep['command']['seed'] == 7


def test_timestamp_fields(tmp_path):
    out = tmp_path / 'r.json'
    main(['majorize', os.path.join(DATA, 'majorize_identity.json'), str(out)])
    rep = json.loads(out.read_text())
    assert 'generated_at' in rep and rep['elapsed_seconds'] >= 0


def test_module_entry_point(tmp_path):
    out = tmp_path / 'r.json'
    proc = subprocess.run([sys.executable, '-m', 'normalspec', 'solve-inverse',
                           os.path.join(DATA, 'solve_inverse_not_solvable.json'), str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_NOT_SOLVABLE
    assert 'residue 2' in proc.stderr


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(['--version'])
    assert exc.value.code == 0
    assert '0.1.0' in capsys.readouterr().out
