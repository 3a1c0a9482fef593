"""
title : variables.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from qkagome.core import Complex, SingularKernel

__all__ = [
    "SpectralParams",
    "lift",
    "inverse_lift",
    "kernel_S",
    "kernel_S_u",
    "kernel_matrix",
    "elementary_F",
    "elementary_F_all",
    "branch_free",
    "branch_xxz",
    "dual_map",
]


@dataclass(frozen=True)
class SpectralParams:
    """One spectral parameter together with its two derived variables.

    Parameters
    ----------
    u : complex
    x : complex
        x = (q + u) / (1 + q u)
    X : complex
        X = u^M x
    M : int
    q : float

    """

    u: Complex
    x: Complex
    X: Complex
    M: int
    q: float


def lift(u: Complex, q: float, M: int) -> SpectralParams:
    """Compute x and X from u.

    Raises
    ------
    ZeroDivisionError
        At the pole u = -1/q

    """

    u = complex(u)
    den = 1.0 + q * u
    if den == 0:
        raise ZeroDivisionError(f"Cannot lift u={u} at the pole 1+qu=0 (q={q}).")
    x = (q + u) / den
    return SpectralParams(u, x, u**M * x, M, q)


def inverse_lift(x: Complex, q: float) -> complex:
    """u = (x - q) / (1 - q x), the inverse of the map u -> x."""

    x = complex(x)
    den = 1.0 - q * x
    if den == 0:
        raise ZeroDivisionError(f"Cannot invert x={x} at the pole 1-qx=0 (q={q}).")
    return (x - q) / den


def kernel_S(p_i: SpectralParams, p_j: SpectralParams) -> complex:
    """Two-particle kernel S_ij = (x_i/q - q x_j) / (x_i - x_j).

    Raises
    ------
    SingularKernel
        If x_i = x_j

    """

    q = p_i.q
    if p_i.x == p_j.x:
        raise SingularKernel(f"Kernel S is singular at coincident x={p_i.x}.")
    return (p_i.x / q - q * p_j.x) / (p_i.x - p_j.x)


def kernel_S_u(u_i: Complex, u_j: Complex, q: float) -> complex:
    """The kernel written in the u variables.

    S_ij = (q + u_i + q^2 u_i + q u_i u_j) / (q (u_i - u_j)), equal to
    kernel_S on the lifted parameters.

    Raises
    ------
    SingularKernel
        If u_i = u_j

    """

    if u_i == u_j:
        raise SingularKernel(f"Kernel S is singular at coincident u={u_i}.")
    return (q + u_i + q * q * u_i + q * u_i * u_j) / (q * (u_i - u_j))


def kernel_matrix(xs: Sequence[Complex], q: float) -> np.ndarray:
    """S[i, j] for all i != j from a list of x values; the diagonal is 1.

    Raises
    ------
    SingularKernel
        If two x values coincide

    """

    xs = np.asarray(xs, dtype=complex)
    N = len(xs)
    S = np.ones((N, N), dtype=complex)
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            if xs[i] == xs[j]:
                raise SingularKernel(f"Kernel S is singular at coincident x={xs[i]}.")
            S[i, j] = (xs[i] / q - q * xs[j]) / (xs[i] - xs[j])
    return S


def _xs_and_Xs(
    params: Sequence[SpectralParams], X: Sequence[Complex] | None
) -> tuple[np.ndarray, np.ndarray, float]:
    if len(params) == 0:
        raise ValueError("Cannot evaluate symmetric combinations of no parameters.")
    xs = np.array([p.x for p in params], dtype=complex)
    Xs = np.array([p.X for p in params] if X is None else X, dtype=complex)
    if len(Xs) != len(xs):
        raise ValueError(f"Got {len(Xs)} X values for {len(xs)} parameters.")
    return xs, Xs, params[0].q


def elementary_F(
    n: int, params: Sequence[SpectralParams], X: Sequence[Complex] | None = None
) -> complex:
    """Symmetric combination F_n of the spectral equations.

    F_n = Σ_{|I| = n} Π_{i in I} X_i Π_{i in I, j not in I} S_ij

    Parameters
    ----------
    n : int
        0 <= n <= N
    params : Sequence[SpectralParams]
    X : Sequence[complex] | None = None
        Overrides the X values carried by params

    Returns
    -------
    complex

    Raises
    ------
    ValueError
        If n is out of range
    SingularKernel
        If two x values coincide

    """

    xs, Xs, q = _xs_and_Xs(params, X)
    N = len(xs)
    if not 0 <= n <= N:
        raise ValueError(f"Cannot form F_n with n={n} outside [0, {N}].")
    S = kernel_matrix(xs, q)
    return _F(n, S, Xs)


def elementary_F_all(
    params: Sequence[SpectralParams], X: Sequence[Complex] | None = None
) -> np.ndarray:
    """The vector (F_1, ..., F_N)."""

    xs, Xs, q = _xs_and_Xs(params, X)
    S = kernel_matrix(xs, q)
    return np.array([_F(n, S, Xs) for n in range(1, len(xs) + 1)], dtype=complex)


def _F(n: int, S: np.ndarray, Xs: np.ndarray) -> complex:
    N = len(Xs)
    total = 0j
    for chosen in combinations(range(N), n):
        rest = [j for j in range(N) if j not in chosen]
        term = complex(np.prod(Xs[list(chosen)]))
        for i in chosen:
            for j in rest:
                term *= S[i, j]
        total += term
    return total


def branch_free(params: Sequence[SpectralParams]) -> list[complex]:
    """The branch X_i = 1 for every i."""

    kernel_matrix([p.x for p in params], params[0].q)
    return [1.0 + 0j] * len(params)


def branch_xxz(params: Sequence[SpectralParams]) -> list[complex]:
    """The branch X_i = Π_{j != i} S_ji / S_ij."""

    S = kernel_matrix([p.x for p in params], params[0].q)
    N = len(params)
    return [
        complex(np.prod([S[j, i] / S[i, j] for j in range(N) if j != i]))
        for i in range(N)
    ]


def dual_map(params: Sequence[SpectralParams], X: Sequence[Complex]) -> list[complex]:
    """The symmetry X_i -> X_i^-1 Π_{j != i} S_ji / S_ij of the spectral equations.

    Raises
    ------
    ZeroDivisionError
        If some X_i is zero

    """

    if any(v == 0 for v in X):
        raise ZeroDivisionError(f"Cannot apply the dual map to X={list(X)} with a zero entry.")
    return [ratio / v for ratio, v in zip(branch_xxz(params), X)]
