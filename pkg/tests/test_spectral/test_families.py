"""
title : test_families.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from math import comb

import pytest
import sympy

from qkagome.core import ConfigError
from qkagome.lattice import Classification, GeometryClass
from qkagome.spectral import family, gaussian_binomial, generating_function, q_limit_check

LINE = Classification(GeometryClass.LINE)
COINCIDENT = Classification(GeometryClass.COINCIDENT)
GENERIC = Classification(GeometryClass.GENERIC)


def test_families():
    assert family(LINE, 2).coeffs == ({0: 1}, {0: 2}, {0: 1})
    assert family(COINCIDENT, 2).coeffs[1] == {1: 1, -1: 1}
    assert family(GENERIC, 3).coeffs == family(COINCIDENT, 3).coeffs

    grid = family(Classification.grid(2, 2), 4)
    assert grid.coeffs == ({0: 1}, {1: 2, -1: 2}, {2: 1, 0: 4, -2: 1}, {1: 2, -1: 2}, {0: 1})

    for K in range(1, 6):
        assert family(Classification.grid(K, 1), K).coeffs == family(LINE, K).coeffs

    for N in range(1, 6):
        coincident = family(COINCIDENT, N)
        for n in range(N + 1):
            shifted = {e - n * (N - n): c for e, c in gaussian_binomial(N, n).items()}
            assert coincident.coeffs[n] == shifted
        for fam in (family(LINE, N), coincident):
            assert fam.coeffs[0] == {0: 1} and fam.coeffs[N] == {0: 1}
            for n in range(N + 1):
                assert sum(fam.coeffs[n].values()) == comb(N, n)

    with pytest.raises(ConfigError):
        family(Classification.grid(2, 2), 3)
    with pytest.raises(ConfigError):
        family(LINE, 0)


def test_gaussian_binomial():
    assert gaussian_binomial(4, 2) == {0: 1, 2: 1, 4: 2, 6: 1, 8: 1}
    assert gaussian_binomial(3, 0) == gaussian_binomial(3, 3) == {0: 1}
    assert gaussian_binomial(3, 4) == {}
    for N in range(1, 7):
        for n in range(N + 1):
            assert gaussian_binomial(N, n) == gaussian_binomial(N, N - n)


def test_generating_function():
    q, z = sympy.symbols("q z")
    expr = generating_function(family(COINCIDENT, 2))
    assert sympy.simplify(expr - (1 + z / q) * (1 + q * z)) == 0
    expr = generating_function(family(LINE, 3))
    assert sympy.expand(expr - (1 + z) ** 3) == 0


def test_q_limit():
    assert q_limit_check(LINE, 4, 1e-3) == 0.0
    assert q_limit_check(COINCIDENT, 3, 1e-6) <= 1e-4
    assert q_limit_check(Classification.grid(2, 2), 4, 1e-6) <= 1e-4
    with pytest.raises(ValueError):
        q_limit_check(LINE, 2, 0.2)

    fam = family(COINCIDENT, 2, q=0.5)
    assert fam.values()[1] == pytest.approx(2.5)
    assert fam.at(0.25).values()[1] == pytest.approx(4.25)
    with pytest.raises(ValueError):
        family(COINCIDENT, 2).values()
