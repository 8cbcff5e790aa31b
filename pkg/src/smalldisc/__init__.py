"""Exact arithmetic for abelian number fields, Dirichlet characters and small character tables."""

__version__ = "0.1.0"

from .arith import FactoredInt, factor, unit_group
from .dirichlet import DirichletCharacter, enumerate_characters, primitivize
from .errors import (
    CanonicalizationError,
    CharacterTableError,
    DomainError,
    ParseError,
    SizeError,
    SmallDiscError,
)
from .fields import AbelianField, cyclotomic, field_from_subgroup, parse_field_spec, quadratic

__all__ = [
    "AbelianField",
    "CanonicalizationError",
    "CharacterTableError",
    "DirichletCharacter",
    "DomainError",
    "FactoredInt",
    "ParseError",
    "SizeError",
    "SmallDiscError",
    "cyclotomic",
    "enumerate_characters",
    "factor",
    "field_from_subgroup",
    "parse_field_spec",
    "primitivize",
    "quadratic",
    "unit_group",
]
