"""
title : test_spectrum.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import numpy as np
import pytest

from qkagome.core import SectorTooLarge
from qkagome.evolution import ALTERNATE_ORDER, build_evolution
from qkagome.lattice import TorusConfig
from qkagome.qfock import ModelParams, SectorCharge
from qkagome.verify import (
    Cluster,
    cluster_eigenvalues,
    diagonalize,
    read_spectrum_csv,
    spectrum_csv,
    unit_modulus_defect,
)


def test_cluster_eigenvalues():
    clusters = cluster_eigenvalues([1.0, 1.0 + 1e-9, 1j, -1.0, 1.0 - 1e-9j])
    assert [c.multiplicity for c in clusters] == [3, 1, 1]
    assert abs(clusters[0].value - 1.0) <= 1e-8
    assert clusters[1].value == 1j
    assert clusters[2].value == -1.0

    assert cluster_eigenvalues([]) == []

    # chains of close neighbours merge
    chain = [1.0 + k * 0.5e-7 for k in range(5)]
    assert [c.multiplicity for c in cluster_eigenvalues(chain)] == [5]
    assert len(cluster_eigenvalues(chain, radius=1e-8)) == 5

    rng = np.random.default_rng(3)
    for _ in range(20):
        values = np.exp(1j * rng.uniform(-np.pi, np.pi, size=30))
        clusters = cluster_eigenvalues(values)
        assert sum(c.multiplicity for c in clusters) == 30
        assert cluster_eigenvalues(values[::-1]) == clusters


def test_diagonalize():
    cfg = TorusConfig(2)
    params = ModelParams(0.5)

    vacuum = build_evolution(cfg, params, SectorCharge(0, 0))
    clusters = diagonalize(vacuum)
    assert len(clusters) == 1
    assert abs(clusters[0].value - 1.0) <= 1e-12 and clusters[0].multiplicity == 1

    block = build_evolution(cfg, params, SectorCharge(1, 1))
    clusters = diagonalize(block)
    assert sum(c.multiplicity for c in clusters) == 20
    assert unit_modulus_defect(clusters) <= 1e-8

    with pytest.raises(SectorTooLarge):
        diagonalize(block, cap=10)


def test_spectrum_order_invariance():
    cfg = TorusConfig(3)
    for q in [0.3, 0.7]:
        params = ModelParams(q)
        a = diagonalize(build_evolution(cfg, params, SectorCharge(1, 1)))
        b = diagonalize(build_evolution(cfg, params, SectorCharge(1, 1), order=ALTERNATE_ORDER))
        assert len(a) == len(b)
        for c in a:
            nearest = min(b, key=lambda d: abs(d.value - c.value))
            assert abs(nearest.value - c.value) <= 1e-8
            assert nearest.multiplicity == c.multiplicity


def test_spectrum_csv():
    clusters = [Cluster(1.0 + 0j, 4), Cluster(-0.75 + 0.6614378277661477j, 4), Cluster(-1j, 2)]
    text = spectrum_csv(clusters)
    assert text.splitlines()[0] == "re,im,multiplicity"
    assert len(text.splitlines()) == 4

    back = read_spectrum_csv(text)
    assert [c.multiplicity for c in back] == [4, 4, 2]
    for c, d in zip(clusters, back):
        assert abs(c.value - d.value) <= 1e-11

    assert spectrum_csv(clusters) == text
    assert read_spectrum_csv(spectrum_csv([])) == []
