"""Admissible surface types and their (dimension, splitting degree) table.

A compact space carries a nonnegatively-curved structure of the kind
this package models exactly when it is one of ten types.  The table
below indexes them by the dimension of the space and the splitting
degree k of its universal cover; each (dim, k) cell lists exactly the
types that can occur there, and the cells partition the admissible set.
"""
from __future__ import annotations

import json

from .errors import GeometryError

SURFACE_TYPES = (
    "point",
    "interval",
    "circle",
    "torus",
    "klein",
    "mobius",
    "cylinder",
    "sphere",
    "rp2",
    "disc",
)

CLASSIFICATION_TABLE = {
    (0, 0): frozenset({"point"}),
    (1, 0): frozenset({"interval"}),
    (1, 1): frozenset({"circle"}),
    (2, 0): frozenset({"sphere", "rp2", "disc"}),
    (2, 1): frozenset({"cylinder", "mobius"}),
    (2, 2): frozenset({"torus", "klein"}),
}

# accepted spellings, lowercased; each maps onto a canonical type name
_ALIASES = {
    "point": "point",
    "pt": "point",
    "interval": "interval",
    "segment": "interval",
    "i": "interval",
    "circle": "circle",
    "s1": "circle",
    "s^1": "circle",
    "torus": "torus",
    "t2": "torus",
    "t^2": "torus",
    "2-torus": "torus",
    "klein": "klein",
    "klein bottle": "klein",
    "k2": "klein",
    "k^2": "klein",
    "mobius": "mobius",
    "moebius": "mobius",
    "mobius band": "mobius",
    "moebius band": "mobius",
    "mobius strip": "mobius",
    "moebius strip": "mobius",
    "m2": "mobius",
    "m^2": "mobius",
    "cylinder": "cylinder",
    "annulus": "cylinder",
    "s1xi": "cylinder",
    "sphere": "sphere",
    "s2": "sphere",
    "s^2": "sphere",
    "2-sphere": "sphere",
    "rp2": "rp2",
    "rp^2": "rp2",
    "projective plane": "rp2",
    "disc": "disc",
    "disk": "disc",
    "d": "disc",
    "closed disc": "disc",
}


def canonical_name(name: str):
    """The canonical type name for a spelling, or None if unrecognized."""
    return _ALIASES.get(str(name).strip().lower())


def admissible(name: str) -> bool:
    """Whether the named space carries an admissible structure."""
    return canonical_name(name) is not None


def classify(dim: int, k: int) -> frozenset:
    """The set of types with the given dimension and splitting degree."""
    dim = int(dim)
    k = int(k)
    if dim not in (0, 1, 2):
        raise GeometryError("parameter-range", f"dimension must be 0, 1, or 2, got {dim}")
    if k < 0 or k > dim:
        raise GeometryError(
            "invalid-splitting-degree", f"splitting degree {k} invalid for dimension {dim}"
        )
    return CLASSIFICATION_TABLE[(dim, k)]


def table_json() -> str:
    """The classification table as JSON, keyed 'dim,k' with sorted cells."""
    data = {
        f"{dim},{k}": sorted(cell) for (dim, k), cell in sorted(CLASSIFICATION_TABLE.items())
    }
    return json.dumps(data, indent=2, sort_keys=True)
