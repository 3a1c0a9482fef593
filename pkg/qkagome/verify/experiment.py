"""
title : experiment.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any, Callable, Sequence, TypeVar
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
import logging
import time

from qkagome.ansatz import (
    build_appendix_system,
    construct_state,
    eigen_residual,
    solve_coefficients,
)
from qkagome.cli.config import RunConfig
from qkagome.core import StageError
from qkagome.evolution import EvolutionBlock, build_evolution, unitarity_defect
from qkagome.lattice import GeometryClass
from qkagome.qfock import SectorCharge
from qkagome.spectral import SolutionSet, family, solve_system

from .matching import MatchReport, match
from .spectrum import diagonalize, unit_modulus_defect

__all__ = [
    "run_experiment",
    "run_experiments",
    "run_solve",
    "run_build",
    "run_ansatz",
    "expected_multiplicity",
]

logger = logging.getLogger(__name__)

T = TypeVar("T")


class _Stages:
    """Runs named stages, timing them and tagging their failures."""

    def __init__(self) -> None:
        self.timings: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        logger.debug("Stage %s started.", name)
        try:
            yield
        except StageError:
            raise
        except Exception as err:
            raise StageError(name, err) from err
        finally:
            self.timings[name] = time.perf_counter() - start


def expected_multiplicity(config: RunConfig) -> int:
    """M^2 translated copies for one particle, 1 otherwise."""
    return config.M * config.M if config.N == 1 else 1


def run_build(config: RunConfig) -> EvolutionBlock:
    """Build the block of sector (N, N)."""

    config.validate()
    return build_evolution(
        config.torus(),
        config.model(),
        SectorCharge(config.N, config.N),
        cap=config.cap,
        jobs=config.jobs,
    )


def run_solve(config: RunConfig) -> SolutionSet:
    """Solve the spectral equations of the configured family."""

    config.validate()
    fam = family(config.classification(), config.N, config.family_q)
    return solve_system(
        config.N,
        config.M,
        config.q,
        fam,
        mode=config.mode,
        starts=config.multistart,
        seed=config.seed,
        dedup=config.dedup,
        jobs=config.jobs,
    )


def run_experiment(config: RunConfig) -> MatchReport:
    """Build U on sector (N, N), diagonalize it and match the predicted eigenvalues.

    Parameters
    ----------
    config : RunConfig

    Returns
    -------
    MatchReport

    Raises
    ------
    StageError
        Wrapping the failure of any stage with its name

    """

    stages = _Stages()

    with stages.stage("config"):
        config.validate()
        geom = config.geometry_obj()

    with stages.stage("evolution"):
        block = run_build(config)
        defect = unitarity_defect(block)

    with stages.stage("spectrum"):
        clusters = diagonalize(block, config.cluster_radius, config.cap)

    with stages.stage("solve"):
        solutions = run_solve(config.with_overrides(mode="u"))

    with stages.stage("match"):
        report = match(
            solutions,
            clusters,
            tol=config.match_tol,
            expected=expected_multiplicity(config),
            config=config.to_json(),
        )

    report.extras = {
        "geometry": {
            "positions": geom.to_json(),
            "classification": str(geom.classification),
        },
        "family": solutions.family.to_json(),
        "solve": {
            "starts": solutions.starts,
            "converged": solutions.converged,
            "solutions": len(solutions),
        },
        "invariants": {
            "unitarity_defect": defect,
            "unitarity_ok": defect <= config.unitarity_tol,
            "unit_modulus_defect": unit_modulus_defect(clusters),
        },
    }
    if config.timings:
        report.timings = dict(stages.timings)

    logger.info(
        "Experiment M=%d q=%g N=%d (%s): %d/%d predictions matched.",
        config.M,
        config.q,
        config.N,
        solutions.family.kind,
        sum(m.passed for m in report.matches),
        len(report.matches),
    )
    return report


def run_ansatz(config: RunConfig, with_states: bool = True) -> dict[str, Any]:
    """Evaluate the ansatz conditions at every solution of the spectral equations.

    When with_states is set the eigenstate of every solution is constructed
    and its eigen residual against the block of sector (N, N) is reported.

    Returns
    -------
    dict[str, Any]
        The 'ansatz_conditions' section of a report

    """

    stages = _Stages()
    with stages.stage("config"):
        config.validate()
        cfg, params, geom = config.torus(), config.model(), config.geometry_obj()

    with stages.stage("solve"):
        solutions = run_solve(config.with_overrides(mode="u"))

    # particles sharing one anchor are judged on the closure alone
    block = None
    if with_states or (geom.classification.kind is GeometryClass.COINCIDENT and config.N > 1):
        with stages.stage("evolution"):
            block = run_build(config)

    entries = []
    with stages.stage("ansatz"):
        for sol in solutions.solutions:
            system = build_appendix_system(cfg, params, geom, sol.u, block)
            coeffs, conditions = solve_coefficients(system)
            entry = {
                "u": list(sol.u),
                "Lambda": sol.Lambda,
                "max_condition": float(conditions.max()) if conditions.size else 0.0,
                "deficiency": coeffs.deficiency,
            }
            if with_states:
                state = construct_state(cfg, params, geom, sol.u, coeffs)
                entry["eigen_residual"] = eigen_residual(block, state, sol.Lambda)
            entries.append(entry)

    return {
        "geometry": str(geom.classification),
        "family": solutions.family.to_json(),
        "tol": config.residual_tol,
        "solutions": entries,
        "passed": all(e["max_condition"] <= config.residual_tol for e in entries),
    }


def run_experiments(
    configs: Sequence[RunConfig],
    jobs: int = 1,
    runner: Callable[[RunConfig], T] = run_experiment,
) -> list[T]:
    """Run independent experiments, at most jobs at a time, in input order."""

    if jobs <= 1 or len(configs) <= 1:
        return [runner(c) for c in configs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(runner, configs))
