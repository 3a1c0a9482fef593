"""
title : construct.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Sequence
from itertools import combinations, product
import logging

from qkagome.core import Complex
from qkagome.lattice import Geometry, ModeId, TorusConfig, Vertex
from qkagome.qfock import ModelParams, StateVec, apply_raise, inner

from .appendix import C_FLOOR, AnsatzCoefficients
from .one_particle import pair_term

__all__ = ["construct_state", "exchange_overlap"]

logger = logging.getLogger(__name__)

# one term of a creation factor: (modes raised, amplitude)
_Term = tuple[tuple[ModeId, ...], complex]


def _factor_terms(
    cfg: TorusConfig,
    v: Vertex,
    u: complex,
    position: int,
    perm: tuple[int, ...],
    coeffs: AnsatzCoefficients,
) -> list[_Term]:
    terms: list[_Term] = [((ModeId(2, v),), 1.0 + 0j)]
    for delta in range(1, cfg.M + 1):
        amp = coeffs.g(position, perm, delta) * u ** (-delta)
        terms.append((pair_term(v, delta, cfg), amp))
    return terms


def construct_state(
    cfg: TorusConfig,
    params: ModelParams,
    geom: Geometry,
    u_list: Sequence[Complex],
    coeffs: AnsatzCoefficients,
) -> StateVec:
    """Expand Σ_perm C(perm) Π_j A+(v_j, u_perm(j)) |0> in the occupation basis.

    When the coefficients were solved on the ansatz closure the state found
    there is returned: its plane-wave amplitudes and collision amplitudes
    are the solved ones. Otherwise each factor carries the chain value of
    its segment in place of a single g, and terms in which factors raise
    modes on a common vertex are left uncorrected.

    Parameters
    ----------
    cfg : TorusConfig
    params : ModelParams
    geom : Geometry
    u_list : Sequence[complex]
    coeffs : AnsatzCoefficients

    Returns
    -------
    StateVec

    """

    if coeffs.state is not None:
        return coeffs.state

    u_list = [complex(u) for u in u_list]
    cmax = max(abs(c) for c in coeffs.C.values())

    state = StateVec.zero()
    joint = 0
    for perm, c in sorted(coeffs.C.items()):
        if abs(c) <= C_FLOOR * cmax:
            continue
        factors = [
            _factor_terms(cfg, v, u_list[perm[j]], j, perm, coeffs)
            for j, v in enumerate(geom.positions)
        ]
        for combo in product(*factors):
            amp = c
            vec = StateVec.vacuum()
            touched = []
            for modes, a in combo:
                amp *= a
                touched.append({m.vertex for m in modes})
                for m in modes:
                    vec = apply_raise(m, vec, params)
            if any(x & y for x, y in combinations(touched, 2)):
                joint += 1
            state = state + vec * amp

    if joint:
        logger.warning(
            "%d joint-point terms left uncorrected; judge the state by its eigen residual.",
            joint,
        )
    return state.pruned()


def exchange_overlap(a: StateVec, b: StateVec) -> float:
    """|<a|b>| / (‖a‖ ‖b‖), equal to 1 iff a and b are parallel."""

    den = a.norm() * b.norm()
    if den == 0.0:
        raise ZeroDivisionError("Cannot compare a zero state.")
    return float(abs(inner(a, b)) / den)
