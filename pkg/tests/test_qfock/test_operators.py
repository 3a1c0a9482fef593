"""
title : test_operators.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import math
import random

import numpy as np
import pytest

from qkagome.core import ConfigError
from qkagome.lattice import ModeId, TorusConfig, Vertex, all_modes
from qkagome.qfock import (
    ModelParams,
    Occupation,
    StateVec,
    apply_k,
    apply_lower,
    apply_raise,
    inner,
    occupation,
)

MODE = ModeId(1, Vertex(0, 0))


def generate_state(modes: list[ModeId], size: int = 6) -> StateVec:
    amplitudes = {}
    for _ in range(size):
        occ = Occupation.of({m: random.randint(0, 3) for m in random.sample(modes, 3)})
        amplitudes[occ] = complex(random.gauss(0, 1), random.gauss(0, 1))
    return StateVec(amplitudes)


def test_single_mode_actions():
    params = ModelParams(0.5)
    vac = StateVec.vacuum()
    one = Occupation.of({MODE: 1})
    two = Occupation.of({MODE: 2})

    assert math.isclose(apply_raise(MODE, vac, params).get(one).real, math.sqrt(0.75))
    twice = apply_raise(MODE, apply_raise(MODE, vac, params), params)
    assert math.isclose(twice.get(two).real, math.sqrt((1 - 0.25) * (1 - 0.0625)))
    assert len(apply_raise(MODE, StateVec.zero(), params)) == 0

    assert len(apply_lower(MODE, vac, params)) == 0
    lowered = apply_lower(MODE, apply_raise(MODE, vac, params), params)
    assert math.isclose(lowered.get(Occupation.vacuum()).real, 0.75)
    back = apply_raise(MODE, apply_lower(MODE, StateVec.basis(one), params), params)
    assert math.isclose(back.get(one).real, 0.75)

    quarter = ModelParams(0.25)
    assert math.isclose(apply_k(MODE, vac, False, quarter).get(Occupation.vacuum()).real, 0.5)
    assert math.isclose(apply_k(MODE, vac, True, quarter).get(Occupation.vacuum()).real, -0.5)
    for n in range(5):
        state = StateVec.basis(Occupation.of({MODE: n}))
        kk = apply_k(MODE, apply_k(MODE, state, True, quarter), False, quarter)
        assert math.isclose(kk.get(Occupation.of({MODE: n})).real, -(0.25 ** (1 + 2 * n)))

    assert math.isclose(inner(StateVec.vacuum(), StateVec.vacuum()).real, 1.0)
    assert inner(StateVec.vacuum(), StateVec.basis(one)) == 0
    psi = apply_raise(MODE, vac, params)
    assert math.isclose(inner(psi, psi).real, 0.75)
    assert occupation(MODE, two) == 2


def test_algebra_relations():
    modes = all_modes(TorusConfig(2))
    for q in (0.3, 0.6, 0.9):
        params = ModelParams(q)
        for _ in range(1000):
            psi = generate_state(modes)
            phi = generate_state(modes)
            m = random.choice(modes)

            # adjointness of a+ and a-
            lhs = inner(apply_raise(m, phi, params), psi)
            rhs = inner(phi, apply_lower(m, psi, params))
            assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))

            kkp = apply_k(m, apply_k(m, psi, True, params), False, params)
            r1 = apply_raise(m, apply_lower(m, psi, params), params) - psi - kkp * (1 / q)
            r2 = apply_lower(m, apply_raise(m, psi, params), params) - psi - kkp * q
            r3 = apply_k(m, apply_raise(m, psi, params), False, params) - q * apply_raise(
                m, apply_k(m, psi, False, params), params
            )
            scale = 1 + psi.norm()
            assert r1.norm() <= 1e-12 * scale
            assert r2.norm() <= 1e-12 * scale
            assert r3.norm() <= 1e-12 * scale


def test_state_arithmetic():
    modes = all_modes(TorusConfig(2))
    for _ in range(50):
        psi = generate_state(modes)
        assert (psi - psi).pruned().norm() == 0
        assert math.isclose(psi.normalized().norm(), 1.0)
        assert math.isclose((2 * psi).norm(), 2 * psi.norm())
        assert np.isclose(inner(psi, psi), psi.norm() ** 2)

    with pytest.raises(ZeroDivisionError):
        StateVec.zero().normalized()
    with pytest.raises(ValueError):
        Occupation.of({MODE: -1})
    for q in (0.0, 1.0, 1.5, -0.2):
        with pytest.raises(ConfigError):
            ModelParams(q)

    occ = Occupation.of({ModeId(3, Vertex(1, 0)): 2, MODE: 1})
    assert Occupation.from_json(occ.to_json()) == occ
    assert occ.to_json() == {"1:0,0": 1, "3:1,0": 2}
