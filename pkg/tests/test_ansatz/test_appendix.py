"""
title : test_appendix.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import numpy as np
import pytest

from qkagome.ansatz import (
    build_appendix_system,
    construct_state,
    eigen_residual,
    exchange_overlap,
    one_particle_state,
    solve_coefficients,
)
from qkagome.core import DegenerateSchedule, SingularKernel
from qkagome.evolution import build_evolution
from qkagome.lattice import TorusConfig, classify_geometry, parse_geometry
from qkagome.qfock import ModelParams, SectorCharge
from qkagome.spectral import family, solve_one_particle, solve_system

_BLOCKS = {}


def _two_particle_block(M, q):
    if (M, q) not in _BLOCKS:
        _BLOCKS[(M, q)] = build_evolution(TorusConfig(M), ModelParams(q), SectorCharge(2, 2))
    return _BLOCKS[(M, q)]


def _random_u(rng, N):
    # |u_1 ... u_N| stays below 0.8^N, away from the unit circle
    return np.exp(2j * np.pi * rng.random(N)) * (0.5 + 0.3 * rng.random(N))


def test_one_particle_chain():
    M, q = 3, 0.6
    cfg, params = TorusConfig(M), ModelParams(q)
    geom = parse_geometry("coincident", 1, cfg)

    for s in solve_one_particle(M, q).solutions:
        system = build_appendix_system(cfg, params, geom, s.u)
        assert system.matrix.shape == (1, 1)
        assert system.closure is None
        coeffs, conditions = solve_coefficients(system)
        assert np.max(conditions) <= 1e-10
        assert coeffs.deficiency == 0

        state = construct_state(cfg, params, geom, s.u, coeffs)
        expected = one_particle_state(cfg, params, geom.positions[0], s.u[0])
        assert (state - expected).norm() <= 1e-12

    system = build_appendix_system(cfg, params, geom, [2.0])
    _, conditions = solve_coefficients(system)
    assert np.max(conditions) > 1e-3


def test_line_consistency():
    M, q = 3, 0.6
    cfg, params = TorusConfig(M), ModelParams(q)
    geom = parse_geometry("line", 2, cfg)
    block = _two_particle_block(M, q)

    solutions = solve_system(2, M, q, family(geom.classification, 2))
    assert len(solutions) > 0
    for s in solutions.solutions:
        system = build_appendix_system(cfg, params, geom, s.u, block)
        assert system.matrix.shape == (4, 2)
        assert system.pairs == []
        coeffs, conditions = solve_coefficients(system)
        assert np.max(conditions) <= 1e-8
        assert abs(coeffs.C[(0, 1)] - 1) <= 1e-15

        state = construct_state(cfg, params, geom, s.u, coeffs)
        assert eigen_residual(block, state, s.u[0] * s.u[1]) <= 1e-8

        swapped_system = build_appendix_system(cfg, params, geom, s.u[::-1], block)
        swapped = construct_state(cfg, params, geom, s.u[::-1], solve_coefficients(swapped_system)[0])
        assert exchange_overlap(state, swapped) >= 1 - 1e-8

    rng = np.random.default_rng(7)
    for _ in range(20):
        u = np.exp(2j * np.pi * rng.random(2)) * (0.5 + rng.random(2))
        _, conditions = solve_coefficients(build_appendix_system(cfg, params, geom, u))
        assert np.max(conditions) > 1e-3


def test_coincident_closure():
    M, q = 3, 0.6
    cfg, params = TorusConfig(M), ModelParams(q)
    geom = parse_geometry("coincident", 2, cfg)
    block = _two_particle_block(M, q)

    solutions = solve_system(2, M, q, family(geom.classification, 2))
    assert "xxz" in {s.branch for s in solutions.solutions}
    for s in solutions.solutions:
        system = build_appendix_system(cfg, params, geom, s.u, block)
        assert all(len(sched) == 0 for sched in system.schedules)
        assert system.matrix.shape[0] == 0
        assert system.closure.collisions > 0

        coeffs, conditions = solve_coefficients(system)
        assert np.max(conditions) <= 1e-8, s.branch
        state = construct_state(cfg, params, geom, s.u, coeffs)
        assert abs(state.norm() - 1) <= 1e-12
        assert eigen_residual(block, state, s.Lambda) <= 1e-8

    rng = np.random.default_rng(11)
    for _ in range(10):
        system = build_appendix_system(cfg, params, geom, _random_u(rng, 2), block)
        _, conditions = solve_coefficients(system)
        assert np.max(conditions) > 1e-3

    # without a block the system builds its own
    s = solutions.solutions[0]
    _, conditions = solve_coefficients(build_appendix_system(cfg, params, geom, s.u))
    assert np.max(conditions) <= 1e-8


def test_conditions_vanish_on_solutions():
    M = 3
    cfg = TorusConfig(M)
    points = []
    for q in (0.3, 0.6):
        for name in ("line", "coincident"):
            geom = parse_geometry(name, 2, cfg)
            for s in solve_system(2, M, q, family(geom.classification, 2)).solutions:
                points.append((q, geom, s.u))

    rng = np.random.default_rng(3)
    assert len(points) >= 4
    chosen = rng.choice(len(points), size=min(20, len(points)), replace=False)
    for i in chosen:
        q, geom, u = points[i]
        system = build_appendix_system(cfg, ModelParams(q), geom, u, _two_particle_block(M, q))
        _, conditions = solve_coefficients(system)
        assert np.max(conditions) <= 1e-8

        _, conditions = solve_coefficients(
            build_appendix_system(
                cfg, ModelParams(q), geom, _random_u(rng, 2), _two_particle_block(M, q)
            )
        )
        assert np.max(conditions) > 1e-3


def test_grid_system():
    M, q = 5, 0.4
    cfg, params = TorusConfig(M), ModelParams(q)
    geom = parse_geometry("grid:2x2", 4, cfg)
    u = [0.9, 1.1j, -0.8 + 0.1j, 0.2 - 1.2j]

    system = build_appendix_system(cfg, params, geom, u)
    assert [len(s) for s in system.schedules] == [2, 2, 2, 2]
    assert system.matrix.shape == (24 * 4 * 2, 24 + 24 * 4)
    assert len(system.pairs) == 8
    assert system.closure is None
    assert np.all(np.max(np.abs(system.matrix), axis=1) <= 1.0 + 1e-12)

    coeffs, conditions = solve_coefficients(system)
    assert conditions.shape == (24 * 4 * 2 + 24 * 8,)
    assert coeffs.deficiency >= 0
    assert len(coeffs.C) == 24
    for (position, perm), table in coeffs.g_tables.items():
        assert len(table) == 3
        assert table[0] == pytest.approx((1 + q * system.assignments[perm].u[position]) / (1 - q * q))


def test_appendix_errors():
    cfg, params = TorusConfig(7), ModelParams(0.5)
    line = parse_geometry("line", 2, cfg)
    with pytest.raises(SingularKernel):
        build_appendix_system(cfg, params, line, [0.5j, 0.5j])
    with pytest.raises(ValueError):
        build_appendix_system(cfg, params, line, [0.5j])
    with pytest.raises(ValueError):
        build_appendix_system(cfg, params, parse_geometry("generic", 2, cfg), [0.5j, 1.0])

    degenerate = classify_geometry([(0, 0), (2, 0), (0, 2), (2, 2)], cfg)
    with pytest.raises(DegenerateSchedule):
        build_appendix_system(cfg, params, degenerate, [1.0, 2.0, 3.0, 4.0])

    five = classify_geometry([(k, 0) for k in range(5)], cfg)
    with pytest.raises(ValueError):
        build_appendix_system(cfg, params, five, [1, 2, 3, 4, 5])

    small = TorusConfig(2)
    wrong = build_evolution(small, params, SectorCharge(1, 1))
    with pytest.raises(ValueError):
        build_appendix_system(small, params, parse_geometry("line", 2, small), [0.5j, 1.0], wrong)
