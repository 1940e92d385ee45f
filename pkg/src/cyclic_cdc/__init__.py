"""Cyclic constant-dimension subspace codes over finite-field towers.

Construction of Sidon-space and subspace-polynomial orbit codes, exact
desk-scale verification of their sizes and minimum distances, closed-form
size formulas and sphere-packing/Johnson bounds, and a small operator-channel
simulator with minimum-distance decoding.
"""

__version__ = "0.1.0"

from . import errors
from .field_tower import FieldElement, FieldTower, build_tower
from .orbit_codes import UnionCode, build_union, verify_code, verify_min_distance
from .sidon_constructions import (
    ConstructionParams,
    cross_pair_ok,
    enumerate_family,
    is_sidon,
    make_subspace,
)
from .subspace_linalg import Subspace, cyclic_shift, orbit_size, span, subspace_distance

__all__ = [
    "ConstructionParams",
    "FieldElement",
    "FieldTower",
    "Subspace",
    "UnionCode",
    "__version__",
    "build_tower",
    "build_union",
    "cross_pair_ok",
    "cyclic_shift",
    "enumerate_family",
    "errors",
    "is_sidon",
    "make_subspace",
    "orbit_size",
    "span",
    "subspace_distance",
    "verify_code",
    "verify_min_distance",
]
