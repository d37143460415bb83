"""Exact arithmetic for partition algebras and the restriction of their cell modules to symmetric groups."""

from .algebra import AlgebraElement, idempotent_e, multiply, parse_element
from .errors import PartitionAlgebraError
from .fields import Q, PrimeField, parse_field
from .partitions import enumerate_classes, enumerate_diagrams, parse_diagram, parse_partial
from .pipeline import restricted_cell_module, verify_theorem

__all__ = [
    "AlgebraElement",
    "PartitionAlgebraError",
    "PrimeField",
    "Q",
    "enumerate_classes",
    "enumerate_diagrams",
    "idempotent_e",
    "multiply",
    "parse_diagram",
    "parse_element",
    "parse_field",
    "parse_partial",
    "restricted_cell_module",
    "verify_theorem",
]
