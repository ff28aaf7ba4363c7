from ._core import (
    AbeltoricError,
    Fan,
    basis_relations,
    builtin_labels,
    certify,
    classify_csv,
    intersection_number,
    load_fan,
    primitive_collections,
    replay,
    star_subdivision,
    validate,
)

__all__ = [
    "AbeltoricError",
    "Fan",
    "basis_relations",
    "builtin_labels",
    "certify",
    "classify_csv",
    "intersection_number",
    "load_fan",
    "primitive_collections",
    "replay",
    "star_subdivision",
    "validate",
]
