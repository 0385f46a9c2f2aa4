"""Exact counting of isosceles right triangles (IRTs) in planar point sets,
with the lattice constructions, coefficient analysis, bounds and searches
built on top of it.
"""

__version__ = "0.1.0"

from .geometry import Point, PointSet, classify_irt, point, rot45_minus, rot45_plus, rot90
from .counting import (DegreeProfile, count_irt, count_irt_oracle, deg45, deg90, deg90_candidate,
                       degree_profile, extension_gain)
from .lattice import Closure, Lattice, TwoDiskParams, disk_lattice, lattice_rotation_class, square_grid, two_disk

__all__ = [
    "Point", "PointSet", "point", "rot90", "rot45_plus", "rot45_minus", "classify_irt",
    "DegreeProfile", "count_irt", "count_irt_oracle", "deg90", "deg90_candidate", "deg45",
    "degree_profile", "extension_gain",
    "Closure", "Lattice", "TwoDiskParams", "disk_lattice", "lattice_rotation_class",
    "square_grid", "two_disk",
]
