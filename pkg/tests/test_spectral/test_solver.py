"""
title : test_solver.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import numpy as np
import pytest

from qkagome.lattice import Classification, GeometryClass
from qkagome.spectral import (
    elementary_F_all,
    family,
    jacobian,
    kernel_S,
    lift,
    newton,
    solve_one_particle,
    solve_system,
)

LINE = Classification(GeometryClass.LINE)
COINCIDENT = Classification(GeometryClass.COINCIDENT)


def test_newton():
    z, res, ok = newton(lambda z: z**2 - 2.0, np.array([1.0 + 0.1j]))
    assert ok and res <= 1e-10
    assert abs(z[0] - np.sqrt(2.0)) <= 1e-9

    z, res, ok = newton(lambda z: np.array([z[0] + z[1] - 3, z[0] * z[1] - 2]), np.array([0.5, 2.5]))
    assert ok
    assert sorted(np.round(z.real, 8)) == [1.0, 2.0]


def test_newton_double_root():
    # Newton converges only linearly at a double root; polishing must still land on it
    z, res, ok = newton(lambda z: (z - 1.0) ** 2, np.array([1.3 + 0.2j]))
    assert ok and res <= 1e-14
    assert abs(z[0] - 1.0) <= 1e-7

    z, _, ok = newton(lambda z: np.array([(z[0] - 1.0) ** 2, z[0] * z[1] + 1.0]), np.array([1.2, -0.7]))
    assert ok
    assert np.max(np.abs(z - np.array([1.0, -1.0]))) <= 1e-7

    J = jacobian(lambda z: np.array([z[0] * z[1], z[0] + 2 * z[1]]), np.array([2.0, 3.0]))
    assert np.max(np.abs(J - np.array([[3.0, 2.0], [1.0, 2.0]]))) <= 1e-8


def test_solve_system_merges_near_singular_roots():
    q = 0.6
    coincident = family(COINCIDENT, 2)
    for fam in (coincident, family(LINE, 2)):
        solutions = solve_system(2, 3, q, fam)
        assert len(solutions) > 0
        for i, a in enumerate(solutions.solutions):
            for b in solutions.solutions[i + 1 :]:
                assert abs(a.Lambda - b.Lambda) > 1e-7 or min(
                    np.max(np.abs(np.array(a.u) - np.array(b.u))),
                    np.max(np.abs(np.array(a.u) - np.array(b.u[::-1]))),
                ) > 1e-4

        near = [s for s in solutions.solutions if abs(s.Lambda + 1) <= 1e-3]
        for s in near:
            assert abs(s.Lambda + 1) <= 1e-7

    # both branches meet at u = (1, -1), a singular root of the coincident system
    solutions = solve_system(2, 3, q, coincident)
    near = [s for s in solutions.solutions if abs(s.Lambda + 1) <= 1e-3]
    assert len(near) == 1
    assert sorted(near[0].u, key=lambda z: z.real) == pytest.approx([-1.0, 1.0], abs=1e-12)


def test_solve_system_xxz_branch():
    q, M = 0.6, 3
    solutions = solve_system(2, M, q, family(COINCIDENT, 2))
    branches = {s.branch for s in solutions.solutions}
    assert "xxz" in branches
    assert "free" in branches
    for s in solutions.solutions:
        if s.branch != "xxz":
            continue
        params = [lift(u, q, M) for u in s.u]
        S12, S21 = kernel_S(params[0], params[1]), kernel_S(params[1], params[0])
        assert abs(s.X[0] - S21 / S12) <= 1e-8
        assert abs(s.X[1] - S12 / S21) <= 1e-8


def test_solve_one_particle():
    roots = [s.u[0] for s in solve_one_particle(2, 0.5).solutions]
    expected = [1.0, -0.75 + 0.66144j, -0.75 - 0.66144j]
    for e in expected:
        assert min(abs(r - e) for r in roots) <= 1e-5

    for M in range(1, 7):
        for q in (0.3, 0.6, 0.9):
            solutions = solve_one_particle(M, q)
            assert len(solutions) == M + 1
            assert min(abs(s.u[0] - 1) for s in solutions.solutions) <= 1e-10
            for s in solutions.solutions:
                u = s.u[0]
                assert abs(u ** (M + 1) + q * u**M - q * u - 1) <= 1e-10
                assert s.Lambda == u

    with pytest.raises(ValueError):
        solve_one_particle(0, 0.5)


def test_solve_system_one_particle():
    fam = family(COINCIDENT, 1)
    solutions = solve_system(1, 3, 0.6, fam)
    assert [s.u for s in solutions.solutions] == [s.u for s in solve_one_particle(3, 0.6).solutions]
    assert solutions.family is fam

    with pytest.raises(ValueError):
        solve_system(2, 3, 0.6, fam)
    with pytest.raises(ValueError):
        solve_system(1, 3, 0.6, fam, mode="z")


def test_solve_system_u():
    q = 0.6
    solutions = solve_system(2, 3, q, family(LINE, 2))
    assert len(solutions) > 0
    for s in solutions.solutions:
        params = [lift(u, q, 3) for u in s.u]
        assert np.max(np.abs(elementary_F_all(params) - [2.0, 1.0])) <= 1e-9
        assert abs(np.prod(s.X) - 1) <= 1e-9
        assert abs(abs(s.Lambda) - 1) <= 1e-8
        assert abs(s.Lambda - s.u[0] * s.u[1]) <= 1e-12

    # pairwise distinct up to permutation
    for i, a in enumerate(solutions.solutions):
        for b in solutions.solutions[i + 1 :]:
            assert min(
                np.max(np.abs(np.array(a.u) - np.array(b.u))),
                np.max(np.abs(np.array(a.u) - np.array(b.u[::-1]))),
            ) > 1e-6

    again = solve_system(2, 3, q, family(LINE, 2))
    assert [s.u for s in again.solutions] == [s.u for s in solutions.solutions]


def test_solve_system_x_free():
    rng = np.random.default_rng(5)
    q = 0.6
    for fam in (family(COINCIDENT, 2), family(LINE, 2)):
        P1 = fam.values(q)[1]
        for _ in range(20):
            seed = int(rng.integers(1 << 30))
            solutions = solve_system(2, 3, q, fam, mode="x-free", seed=seed)
            assert len(solutions) == 2

            params = [lift(u, q, 3) for u in solutions.solutions[0].u]
            S12, S21 = kernel_S(params[0], params[1]), kernel_S(params[1], params[0])
            roots = np.roots([S12, -P1, S21])
            X1 = sorted((s.X[0] for s in solutions.solutions), key=lambda z: (z.real, z.imag))
            for root in roots:
                assert min(abs(root - x) for x in X1) <= 1e-7 * (1 + abs(root))
            for s in solutions.solutions:
                assert s.Lambda is None
                assert abs(s.X[0] * s.X[1] - 1) <= 1e-9
