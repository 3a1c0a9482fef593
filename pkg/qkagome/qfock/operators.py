"""
title : operators.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import math

from qkagome.lattice import ModeId

from .params import ModelParams
from .state import Occupation, StateVec

__all__ = [
    "apply_raise",
    "apply_lower",
    "apply_k",
    "raise_factor",
    "k_eigenvalue",
    "occupation",
]


def occupation(mode: ModeId, occ: Occupation) -> int:
    """Eigenvalue of the number operator of mode on occ."""
    return occ.get(mode)


def raise_factor(n: int, q: float) -> float:
    """Matrix element <n+1|a+|n> = sqrt(1 - q^(2(n+1)))."""
    return math.sqrt(1.0 - q ** (2 * (n + 1)))


def k_eigenvalue(n: int, q: float, primed: bool = False) -> float:
    """Eigenvalue of k (or k' = -k) on |n>, q^(1/2 + n)."""
    value = q ** (0.5 + n)
    return -value if primed else value


def apply_raise(mode: ModeId, state: StateVec, params: ModelParams) -> StateVec:
    """Apply the creation operator a+ of mode to state.

    Parameters
    ----------
    mode : ModeId
    state : StateVec
    params : ModelParams

    Returns
    -------
    StateVec

    """

    out = {}
    for occ, amp in state.items():
        n = occ.get(mode)
        out[occ.with_count(mode, n + 1)] = amp * raise_factor(n, params.q)
    return StateVec(out)


def apply_lower(mode: ModeId, state: StateVec, params: ModelParams) -> StateVec:
    """Apply the annihilation operator a- of mode to state; a-|0> = 0."""

    out = {}
    for occ, amp in state.items():
        n = occ.get(mode)
        if n == 0:
            continue
        out[occ.with_count(mode, n - 1)] = amp * raise_factor(n - 1, params.q)
    return StateVec(out)


def apply_k(mode: ModeId, state: StateVec, primed: bool, params: ModelParams) -> StateVec:
    """Apply k (primed=False) or k' (primed=True) of mode to state."""

    return StateVec(
        {occ: amp * k_eigenvalue(occ.get(mode), params.q, primed) for occ, amp in state.items()}
    )
