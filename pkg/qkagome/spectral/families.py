"""
title : families.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
import sympy

from qkagome.core import ConfigError
from qkagome.lattice import Classification, GeometryClass

__all__ = [
    "Laurent",
    "PolyFamily",
    "family",
    "gaussian_binomial",
    "generating_function",
    "q_limit_check",
]

# exponent of q -> integer coefficient
Laurent = dict[int, int]

_q, _z = sympy.symbols("q z")


@dataclass(frozen=True)
class PolyFamily:
    """The right-hand sides P_0, ..., P_N of the spectral equations.

    Parameters
    ----------
    kind : str
        Name of the geometry class the family belongs to
    N : int
    coeffs : tuple[Laurent, ...]
        N + 1 exact Laurent polynomials in q
    q : float | None = None
        Default evaluation point

    """

    kind: str
    N: int
    coeffs: tuple[Laurent, ...]
    q: float | None = None

    def values(self, q: float | None = None) -> np.ndarray:
        """Evaluate P_0..P_N at q, defaulting to the family's own q."""

        q = self.q if q is None else q
        if q is None:
            raise ValueError(f"No evaluation point given for family {self.kind}.")
        return np.array(
            [sum(c * q**e for e, c in poly.items()) for poly in self.coeffs], dtype=float
        )

    def at(self, q: float) -> PolyFamily:
        return PolyFamily(self.kind, self.N, self.coeffs, q)

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "N": self.N,
            "coeffs": [{str(e): c for e, c in sorted(p.items())} for p in self.coeffs],
        }


def _laurent_coefficients(expr: sympy.Expr, degree: int) -> tuple[Laurent, ...]:
    """Coefficients of z^0..z^degree of a polynomial in z with Laurent coefficients in q."""

    out: list[Laurent] = [{} for _ in range(degree + 1)]
    for term in sympy.Add.make_args(sympy.expand(expr)):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        a = int(powers.get(_z, 0))
        b = int(powers.get(_q, 0))
        out[a][b] = out[a].get(b, 0) + int(coeff)
    return tuple({e: c for e, c in p.items() if c != 0} for p in out)


def _column(L: int) -> sympy.Expr:
    """Π_{j=0}^{L-1} (1 + q^(1-L+2j) z)."""
    return sympy.Mul(*[1 + _q ** (1 - L + 2 * j) * _z for j in range(L)])


@lru_cache(maxsize=None)
def _family_coeffs(kind: GeometryClass, N: int, K: int, L: int) -> tuple[Laurent, ...]:
    if kind is GeometryClass.LINE:
        return tuple({0: comb(N, n)} for n in range(N + 1))
    if kind is GeometryClass.GRID:
        return _laurent_coefficients(_column(L) ** K, N)
    return _laurent_coefficients(_column(N), N)


def family(classification: Classification, N: int, q: float | None = None) -> PolyFamily:
    """The polynomial family attached to a geometry class.

    LINE gives binomial coefficients, COINCIDENT and GENERIC give
    q^(-n(N-n)) times the Gaussian binomial in q^2, and GRID(K, L) gives the
    z-coefficients of the L-column product raised to the K-th power.

    Parameters
    ----------
    classification : Classification
    N : int
    q : float | None = None
        Stored as the default evaluation point

    Returns
    -------
    PolyFamily

    Raises
    ------
    ConfigError
        If N < 1 or a GRID class does not hold N points

    """

    if N < 1:
        raise ConfigError(f"Cannot build a family for N={N}<1 particles.")

    kind = classification.kind
    K, L = classification.K or 0, classification.L or 0
    if kind is GeometryClass.GRID:
        if K * L != N or L < 1:
            raise ConfigError(f"Geometry {classification} holds {K * L} points but N={N}.")
        if K < L:
            K, L = L, K

    return PolyFamily(str(classification), N, _family_coeffs(kind, N, K, L), q)


@lru_cache(maxsize=None)
def gaussian_binomial(N: int, n: int) -> Laurent:
    """The Gaussian binomial (N choose n) in the variable q^2.

    Built by the q-Pascal rule [N, n] = [N-1, n-1] + t^n [N-1, n], t = q^2.

    Returns
    -------
    Laurent
        Exponents of q (all even) to integer coefficients

    """

    if n < 0 or n > N:
        return {}
    if n == 0 or n == N:
        return {0: 1}

    left = sympy.Poly(_as_expr(gaussian_binomial(N - 1, n - 1)), _q)
    right = sympy.Poly(_as_expr(gaussian_binomial(N - 1, n)) * _q ** (2 * n), _q)
    poly = left + right
    return {int(e[0]): int(c) for e, c in poly.as_dict().items()}


def _as_expr(poly: Laurent) -> sympy.Expr:
    return sympy.Add(*[c * _q**e for e, c in poly.items()])


def generating_function(fam: PolyFamily) -> sympy.Expr:
    """Σ_n z^n P_n(q) as a sympy expression in the symbols q and z."""
    return sympy.Add(*[_z**n * _as_expr(p) for n, p in enumerate(fam.coeffs)])


def q_limit_check(classification: Classification, N: int, eps: float) -> float:
    """max_n |P_n(1 - eps) - binomial(N, n)|.

    Raises
    ------
    ValueError
        If eps is not in (0, 0.1)

    """

    if not 0 < eps < 0.1:
        raise ValueError(f"Cannot evaluate the q->1 limit with eps={eps} outside (0, 0.1).")
    values = family(classification, N).values(1.0 - eps)
    return float(max(abs(v - comb(N, n)) for n, v in enumerate(values)))
