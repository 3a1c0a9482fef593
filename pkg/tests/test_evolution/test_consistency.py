"""
title : test_consistency.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from qkagome.evolution import check_path_consistency, relation_residual
from qkagome.lattice import TorusConfig
from qkagome.qfock import ModelParams, SectorCharge


def test_path_consistency():
    for M in (1, 2, 3):
        deviation = check_path_consistency(TorusConfig(M), ModelParams(0.5), SectorCharge(1, 0))
        assert deviation <= 1e-12

    assert check_path_consistency(TorusConfig(2), ModelParams(0.5), SectorCharge(1, 1)) <= 1e-10
    assert check_path_consistency(TorusConfig(2), ModelParams(0.9), SectorCharge(2, 2)) <= 1e-10
    assert check_path_consistency(TorusConfig(3), ModelParams(0.3), SectorCharge(2, 1)) <= 1e-10


def test_relation_residuals():
    for q in (0.3, 0.9):
        cfg, params = TorusConfig(2), ModelParams(q)
        for charge in [(0, 0), (1, 0), (1, 1)]:
            for family in (1, 2, 3):
                residual = relation_residual(cfg, params, SectorCharge(*charge), family)
                assert residual <= 1e-10
