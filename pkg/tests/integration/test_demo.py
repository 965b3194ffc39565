import json
import subprocess
import sys

import pytest

from pyfibre.corpus import load_group
from pyfibre.lowindex import low_index_subgroups
from pyfibre.quotients import catalog, count_homs


def pyfibre(*argv):
    return subprocess.run([sys.executable, '-m', 'pyfibre', *argv], capture_output=True, text=True)


@pytest.fixture(scope='module')
def demo_runs():
    return [pyfibre('demo', '--format', 'json', '--jobs', jobs) for jobs in ('1', '2', '1')]


def test_demo_passes(demo_runs):
    run = demo_runs[0]
    assert run.returncode == 0, run.stderr
    report = json.loads(run.stdout)
    assert report['verdict'] == 'PASS'
    assert report['certification']['status'] == 'certified-at-truncation-with-assumptions'
    assert report['result']['steps'] == {'verifyPt': 'PASS', 'denseImage': 'PASS', 'span': 'PASS'}
    assert len(report['result']['pairs']) == 12
    assert report['result']['denseImage']['bound'] == 3


def test_demo_is_deterministic(demo_runs):
    assert len({run.stdout for run in demo_runs}) == 1


def test_text_report():
    run = pyfibre('low-index', '--group', 'F2', '--max-index', '3', '--jobs', '2')
    assert run.returncode == 0
    assert run.stdout.splitlines()[-1] == 'verdict: PASS (certified-at-truncation)'


def test_exit_codes():
    assert pyfibre('verify-pt', '--group', 'F1', '--max-index', '2').returncode == 1
    assert pyfibre('low-index', '--group', 'F2', '--max-nodes', '5').returncode == 3
    assert pyfibre('low-index', '--max-index', '2').returncode == 2


def test_higman_profile():
    higman = load_group('Higman')
    assert [c.index for c in low_index_subgroups(higman, 5, with_h1=False)] == [1]
    for s in catalog():
        h = count_homs(higman, s)
        assert (h.total, h.surjective) == (1, 0)
