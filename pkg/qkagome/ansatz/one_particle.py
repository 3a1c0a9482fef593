"""
title : one_particle.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from dataclasses import dataclass

import numpy as np

from qkagome.core import Complex
from qkagome.evolution import EvolutionBlock, apply_evolution
from qkagome.lattice import E1, E3, ModeId, TorusConfig, Vertex, shift
from qkagome.qfock import ModelParams, StateVec, apply_raise

__all__ = [
    "OneParticleWave",
    "one_particle_coefficient",
    "one_particle_state",
    "pair_term",
    "eigen_residual",
]


def one_particle_coefficient(u: Complex, q: float, M: int) -> tuple[complex, complex]:
    """Both closed ends of the cyclicity chain.

    Returns
    -------
    tuple[complex, complex]
        ((1 + q u) / (1 - q^2), (q + u) u^M / (1 - q^2)); they agree iff u
        solves the one-particle spectral equation

    """

    u = complex(u)
    return (1.0 + q * u) / (1.0 - q * q), (q + u) * u**M / (1.0 - q * q)


@dataclass(frozen=True)
class OneParticleWave:
    """An impurity at base dressed by photon pairs, all with coefficient g.

    Parameters
    ----------
    base : Vertex
    u : complex
    g : complex
        g = (1 + q u) / (1 - q^2)

    """

    base: Vertex
    u: Complex
    g: Complex

    @staticmethod
    def of(base: Vertex, u: Complex, q: float) -> OneParticleWave:
        return OneParticleWave(base, complex(u), (1.0 + q * complex(u)) / (1.0 - q * q))

    def closing_defect(self, q: float, M: int) -> float:
        """|g - (q + u) u^M / (1 - q^2)|, zero iff u solves the cyclicity condition."""
        return float(abs(self.g - one_particle_coefficient(self.u, q, M)[1]))


def pair_term(v: Vertex, delta: int, cfg: TorusConfig) -> tuple[ModeId, ModeId]:
    """The family-1 and family-3 modes of the photon pair at shift delta from v."""
    return ModeId(1, shift(v, E1, delta, cfg)), ModeId(3, shift(v, E3, delta, cfg))


def one_particle_state(
    cfg: TorusConfig, params: ModelParams, v: Vertex, u: Complex
) -> StateVec:
    """[a2+(v) + Σ_{k=1..M} g u^-k a1+(v+k e1) a3+(v+k e3)] |0>.

    Parameters
    ----------
    cfg : TorusConfig
    params : ModelParams
    v : Vertex
    u : complex
        Need not solve the cyclicity condition

    Returns
    -------
    StateVec
        A state of sector (1, 1)

    """

    wave = OneParticleWave.of(cfg.vertex(*v), u, params.q)
    vacuum = StateVec.vacuum()

    state = apply_raise(ModeId(2, wave.base), vacuum, params)
    for k in range(1, cfg.M + 1):
        m1, m3 = pair_term(wave.base, k, cfg)
        pair = apply_raise(m1, apply_raise(m3, vacuum, params), params)
        state = state + pair * (wave.g * wave.u ** (-k))
    return state


def eigen_residual(block: EvolutionBlock, state: StateVec, Lambda: Complex) -> float:
    """‖U state - Λ state‖ / ‖state‖.

    Raises
    ------
    ZeroDivisionError
        If state is zero
    SupportError
        If state leaves the block's sector

    """

    nrm = state.norm()
    if nrm == 0.0:
        raise ZeroDivisionError("Cannot take the eigen residual of the zero state.")
    diff = apply_evolution(block, state) - state * complex(Lambda)
    return float(diff.norm() / nrm)
