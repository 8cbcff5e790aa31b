"""Finite permutation groups, character tables and Artin conductor exponents."""

from .artin import (
    RamificationFiltration,
    artin_conductor_exponent,
    fixed_space_dim,
    random_filtration,
    tensor_conductor_check,
)
from .chartable import (
    CharacterTable,
    ClassFunction,
    character_table,
    inner_product,
    max_irr_degree,
    tensor_trivial_multiplicity,
)
from .groups import (
    PermGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    group_from_generators,
    group_from_string,
    min_abelian_subgroup_index,
    quaternion_group,
    suite_groups,
    symmetric_group,
)

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "PermGroup",
    "RamificationFiltration",
    "alternating_group",
    "artin_conductor_exponent",
    "character_table",
    "cyclic_group",
    "dihedral_group",
    "fixed_space_dim",
    "group_from_generators",
    "group_from_string",
    "inner_product",
    "max_irr_degree",
    "min_abelian_subgroup_index",
    "quaternion_group",
    "random_filtration",
    "suite_groups",
    "symmetric_group",
    "tensor_conductor_check",
    "tensor_trivial_multiplicity",
]
