import json
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile('repo', derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile('repo')

DATA = os.path.join(os.path.dirname(__file__), 'data')
GOLDEN = os.path.join(os.path.dirname(__file__), 'golden')


def load_fixture(name):
    with open(os.path.join(DATA, name)) as fh:
        return json.load(fh)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one PASS/FAIL line per acceptance criterion, printed after the run;
# parametrized cases of one criterion fold into a single line
_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit('::', 1)[-1]
    if not name.startswith('test_criterion_'):
        return
    if report.when == 'call' or report.outcome != 'passed':
        num = int(name.split('_')[2])
        prev = _criteria.get(num)
        if prev is None or prev[0] == 'passed':
            _criteria[num] = (report.outcome, getattr(report, 'criterion_title', ''))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    doc = (item.obj.__doc__ or '').strip().splitlines()
    rep.criterion_title = doc[0] if doc else ''


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section('acceptance criteria')
    for num in sorted(_criteria):
        outcome, title = _criteria[num]
        mark = 'PASS' if outcome == 'passed' else 'FAIL'
        terminalreporter.write_line(f'{mark}  criterion {num:2d}: {title}')
