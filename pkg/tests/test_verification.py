import math

import numpy as np
import pytest
from pydantic import ValidationError

from errors import DomainError, UnknownSuite
from verification import SUITES, SuiteRunner, Verdict, default_runner


def test_verdict_passes_at_tolerance():
    assert Verdict.judge('exact', 1e-9, 1e-9).passed
    assert not Verdict.judge('loose', 2e-9, 1e-9).passed


def test_verdict_line_format():
    line = Verdict.judge('fscc.det_invariance', 2.5e-12, 1e-9).line()
    name, residual, tol, outcome = line.split()
    assert name == 'fscc.det_invariance'
    assert float(residual) == pytest.approx(2.5e-12)
    assert float(tol) == 1e-9
    assert outcome == 'PASS'


@pytest.mark.parametrize("residual", [math.nan, math.inf])
def test_verdict_needs_finite_residual(residual):
    with pytest.raises(ValidationError):
        Verdict.judge('broken', residual, 1e-9)


def test_verdict_outcome_must_match_residual():
    with pytest.raises(ValidationError):
        Verdict(name='liar', residual=1.0, tol=1e-9, passed=True)


def test_default_runner_knows_every_suite():
    assert default_runner().names == sorted(SUITES)
    assert set(SUITES) == {'moebius', 'fscc', 'orthogonality', 'ghosts', 'metric', 'spectrum', 'analytic'}


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        default_runner().run('bogus')


def test_sample_count_must_be_positive():
    with pytest.raises(DomainError):
        default_runner().run('ghosts', samples=0)


def test_custom_suite_and_tolerance_override():
    runner = SuiteRunner()
    runner.register_suite('toy', lambda rng, samples: [('toy.draw', float(rng.uniform(0.1, 0.2)), 1.0)])
    assert runner.run('toy', samples=1, seed=3)[0].passed
    assert not runner.run('toy', samples=1, seed=3, tol=0.01)[0].passed


def test_non_finite_residual_counts_as_failure():
    runner = SuiteRunner()
    runner.register_suite('broken', lambda rng, samples: [('broken.nan', math.nan, 1.0)])
    verdict = runner.run('broken', samples=1)[0]
    assert not verdict.passed
    assert math.isfinite(verdict.residual)


def test_runs_are_reproducible_for_a_seed():
    runner = SuiteRunner()
    runner.register_suite('toy', lambda rng, samples: [('toy.draw', float(rng.uniform()), 1.0)])
    first = runner.run('toy', samples=1, seed=11)[0].residual
    assert runner.run('toy', samples=1, seed=11)[0].residual == first
    expected = np.random.default_rng(11).uniform()
    assert first == expected


@pytest.mark.parametrize("name, samples", [
    ('moebius', 30),
    ('fscc', 5),
    ('ghosts', 20),
    ('orthogonality', 30),
    ('analytic', 2),
])
def test_suites_pass_on_small_samples(name, samples):
    verdicts = default_runner().run(name, samples=samples, seed=2008)
    assert verdicts
    failed = [v.line() for v in verdicts if not v.passed]
    assert failed == []


def test_extremal_distance_check_covers_all_three_planes():
    # samples cycle through sigma = -1, 0, 1
    verdicts = {v.name: v for v in default_runner().run('metric', samples=12, seed=2008)}
    assert verdicts['metric.extremal_distance'].passed
    assert verdicts['metric.distance_ordering'].passed
