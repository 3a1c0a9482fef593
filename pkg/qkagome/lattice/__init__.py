from .torus import *
from .geometry import *

__all__ = [
    "TorusConfig",
    "Vertex",
    "ModeId",
    "E1",
    "E3",
    "shift",
    "all_vertices",
    "all_modes",
    "GeometryClass",
    "Classification",
    "Geometry",
    "DeltaSchedule",
    "classify_geometry",
    "delta_schedule",
    "cyclic_reanchor",
    "translate_positions",
    "parse_geometry",
]
