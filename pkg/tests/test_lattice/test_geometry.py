"""
title : test_geometry.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import random

import pytest

from qkagome.core import ConfigError, DegenerateSchedule
from qkagome.lattice import (
    Classification,
    GeometryClass,
    TorusConfig,
    Vertex,
    classify_geometry,
    cyclic_reanchor,
    delta_schedule,
    parse_geometry,
    translate_positions,
)


def test_classify_geometry():
    cfg = TorusConfig(4)
    assert classify_geometry([(0, 0), (0, 0)], cfg).classification.kind is GeometryClass.COINCIDENT
    assert classify_geometry([(0, 0), (1, 0), (2, 0)], cfg).classification.kind is GeometryClass.LINE
    assert classify_geometry([(1, 0), (1, 3)], cfg).classification.kind is GeometryClass.LINE
    assert classify_geometry(
        [(0, 0), (0, 1), (2, 0), (2, 1)], cfg
    ).classification == Classification.grid(2, 2)
    assert classify_geometry([(0, 0), (1, 1)], cfg).classification.kind is GeometryClass.GENERIC
    assert classify_geometry([(0, 0), (0, 0), (1, 0)], cfg).classification.kind is GeometryClass.GENERIC

    # K >= L after canonicalization
    grid = classify_geometry([(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)], TorusConfig(5))
    assert grid.classification == Classification(GeometryClass.GRID, 3, 2)

    with pytest.raises(ValueError):
        classify_geometry([], cfg)


def test_classify_translation_invariance():
    cfg = TorusConfig(5)
    for _ in range(100):
        N = random.randint(1, 4)
        points = [(random.randrange(5), random.randrange(5)) for _ in range(N)]
        offset = (random.randint(-7, 7), random.randint(-7, 7))
        moved = translate_positions(points, offset, cfg)
        assert (
            classify_geometry(points, cfg).classification
            == classify_geometry(moved, cfg).classification
        )


def test_delta_schedule():
    geom = classify_geometry([(0, 0), (2, 0), (0, 3), (2, 3)], TorusConfig(7))
    schedule = delta_schedule(geom, TorusConfig(7))
    assert schedule.deltas == (2, 3)
    assert schedule.tags == ("H", "V")
    assert schedule.vertex == Vertex(0, 0)
    assert [schedule.segment(d) for d in range(1, 8)] == [0, 0, 1, 2, 2, 2, 2]

    line = classify_geometry([(0, 0), (1, 0), (2, 0)], TorusConfig(5))
    schedule = delta_schedule(line, TorusConfig(5))
    assert schedule.deltas == (1, 2)
    assert schedule.tags == ("H", "H")
    assert schedule.slots == (1, 2)

    coincident = classify_geometry([(1, 1)], TorusConfig(3))
    assert len(delta_schedule(coincident, TorusConfig(3))) == 0

    degenerate = classify_geometry([(0, 0), (2, 0), (0, 2), (2, 2)], TorusConfig(7))
    with pytest.raises(DegenerateSchedule):
        delta_schedule(degenerate, TorusConfig(7))


def test_cyclic_reanchor():
    cfg = TorusConfig(5)
    geom = classify_geometry([(1, 0), (3, 0)], cfg)
    assert cyclic_reanchor(geom, cfg, geom.base).chart == geom.chart

    moved = cyclic_reanchor(geom, cfg, 1)
    assert moved.chart == ((6, 0), (3, 0))
    assert delta_schedule(moved, cfg).deltas == (3,)

    back = cyclic_reanchor(moved, cfg, 0)
    assert [(k % 5, l % 5) for k, l in back.chart] == [(1, 0), (3, 0)]

    for _ in range(50):
        points = [(random.randrange(5), random.randrange(5)) for _ in range(3)]
        geom = classify_geometry(points, cfg)
        for i in range(geom.N):
            re = cyclic_reanchor(geom, cfg, i)
            assert re.positions == geom.positions
            assert re.classification == geom.classification
            assert sorted((k % 5, l % 5) for k, l in re.chart) == sorted(points)

    with pytest.raises(IndexError):
        cyclic_reanchor(geom, cfg, 3)


def test_parse_geometry():
    cfg = TorusConfig(5)
    assert parse_geometry(None, 1, cfg).classification.kind is GeometryClass.COINCIDENT
    assert parse_geometry(None, 2, cfg).classification.kind is GeometryClass.LINE
    assert parse_geometry("generic", 2, cfg).classification.kind is GeometryClass.GENERIC
    assert parse_geometry([[0, 0], [0, 2]], 2, cfg).classification.kind is GeometryClass.LINE
    assert str(parse_geometry("grid:2x2", 4, cfg).classification) == "grid:2x2"
    assert str(parse_geometry("grid:2x1", 2, cfg).classification) == "grid:2x1"

    for bad, N in [("grid:2x2", 3), ("hexagon", 2), ([[0, 0]], 2), ("line", 6)]:
        with pytest.raises(ConfigError):
            parse_geometry(bad, N, cfg)
