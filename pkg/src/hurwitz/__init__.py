"""Nielsen classes, braid orbits and spin invariants for alternating-group covers."""

from .perm import AN, SN, ClassLabel, CycleType, Permutation, parse_perm, render

__version__ = "0.1.0"

__all__ = ["AN", "SN", "ClassLabel", "CycleType", "Permutation", "parse_perm", "render", "__version__"]
