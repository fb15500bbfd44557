from .level import GAMMA_STYLES, LevelSpec, build_gx
from .class_set import (
    ClassRep,
    ClassSet,
    class_set,
    decompose,
    kernel_class_count,
    kernel_orbits,
    lift_rep,
)

__all__ = [
    "GAMMA_STYLES",
    "LevelSpec",
    "build_gx",
    "ClassRep",
    "ClassSet",
    "class_set",
    "decompose",
    "kernel_class_count",
    "kernel_orbits",
    "lift_rep",
]
