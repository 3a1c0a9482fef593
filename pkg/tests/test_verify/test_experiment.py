"""
title : test_experiment.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import pytest

from qkagome.cli import RunConfig
from qkagome.core import ConfigError, SectorTooLarge, StageError
from qkagome.utils import dumps
from qkagome.verify import (
    expected_multiplicity,
    run_ansatz,
    run_build,
    run_experiment,
    run_experiments,
    run_solve,
)


def test_expected_multiplicity():
    assert expected_multiplicity(RunConfig(M=3, N=1)) == 9
    assert expected_multiplicity(RunConfig(M=3, N=2)) == 1


def test_run_build_and_solve():
    block = run_build(RunConfig(M=2, q=0.5, N=1))
    assert block.dim == 20

    solutions = run_solve(RunConfig(M=2, q=0.5, N=1))
    assert len(solutions) == 3
    assert solutions.family.kind == "coincident"

    solutions = run_solve(RunConfig(M=3, q=0.6, N=2, geometry="line", multistart=16))
    assert solutions.family.kind == "line"
    assert len(solutions) >= 1


def test_run_experiment():
    config = RunConfig(M=2, q=0.5, N=1)
    report = run_experiment(config)

    assert report.passed
    assert report.dim == 20
    assert report.unmatched_fraction == pytest.approx(8 / 20)
    assert report.config == config.to_json()
    assert report.timings is None
    assert report.extras["invariants"]["unitarity_ok"]
    assert report.extras["invariants"]["unit_modulus_defect"] <= 1e-8
    assert report.extras["geometry"]["classification"] == "coincident"
    assert report.extras["solve"]["solutions"] == 3

    # reports are reproducible byte for byte
    assert dumps(run_experiment(config).to_json()) == dumps(report.to_json())

    timed = run_experiment(config.with_overrides(timings=True))
    assert set(timed.timings) == {"config", "evolution", "spectrum", "solve", "match"}
    assert all(t >= 0 for t in timed.timings.values())


def test_mistuned_family_fails():
    config = RunConfig(M=2, q=0.5, N=2, geometry="coincident", family_q=0.8, multistart=16)
    report = run_experiment(config)
    assert report.matches
    assert not report.passed
    assert any(m.distance > 1e-7 for m in report.matches)


def test_stage_errors():
    with pytest.raises(StageError) as info:
        run_experiment(RunConfig(q=1.5))
    assert info.value.stage == "config"
    assert isinstance(info.value.cause, ConfigError)

    with pytest.raises(StageError) as info:
        run_experiment(RunConfig(M=2, N=1, cap=10))
    assert info.value.stage == "evolution"
    assert isinstance(info.value.cause, SectorTooLarge)


def test_run_ansatz():
    result = run_ansatz(RunConfig(M=2, q=0.5, N=1))
    assert result["passed"]
    assert result["geometry"] == "coincident"
    assert len(result["solutions"]) == 3
    for entry in result["solutions"]:
        assert entry["max_condition"] <= 1e-8
        assert entry["eigen_residual"] <= 1e-8

    result = run_ansatz(RunConfig(M=3, q=0.4, N=1), with_states=False)
    assert result["passed"]
    assert all("eigen_residual" not in e for e in result["solutions"])


def test_run_experiments():
    configs = [RunConfig(M=2, q=q, N=1) for q in [0.3, 0.5, 0.7]]
    serial = run_experiments(configs, jobs=1)
    threaded = run_experiments(configs, jobs=3)

    assert [r.config["q"] for r in threaded] == [0.3, 0.5, 0.7]
    for a, b in zip(serial, threaded):
        assert dumps(a.to_json()) == dumps(b.to_json())

    blocks = run_experiments(configs[:2], jobs=2, runner=run_build)
    assert [b.dim for b in blocks] == [20, 20]


def test_central_conjecture_two_particles():
    for geometry in ("coincident", "line", "generic"):
        report = run_experiment(RunConfig(M=3, q=0.6, N=2, geometry=geometry))
        assert report.dim == 2799
        assert report.matches
        assert report.passed, geometry
        assert max(m.distance for m in report.matches) <= 1e-7

    # the same sector judged against a family evaluated at the wrong q
    control = run_experiment(RunConfig(M=3, q=0.6, N=2, geometry="coincident", family_q=0.8))
    assert control.matches
    assert not control.passed
