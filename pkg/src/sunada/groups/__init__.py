from .carriers import FunctionPerm, Perm
from .core import (ConcreteGroup, Subgroup, commutator_subgroup, element_order,
                   generate_group, subgroup_from, trivial_subgroup, whole_group)
from .classes import ConjugacyClassPartition, class_intersection_counts, conjugacy_classes
from .cosets import (CosetTable, are_subgroups_conjugate, conjugacy_label, coset_table,
                     normal_core, normalizer)

__all__ = [
    "Perm", "FunctionPerm",
    "ConcreteGroup", "Subgroup", "generate_group", "subgroup_from", "element_order",
    "trivial_subgroup", "whole_group", "commutator_subgroup",
    "ConjugacyClassPartition", "conjugacy_classes", "class_intersection_counts",
    "CosetTable", "coset_table", "normal_core", "are_subgroups_conjugate",
    "conjugacy_label", "normalizer",
]
