"""Finite groupoids as partial multiplication tables."""

from .builders import bundle, cyclic, dihedral, group_by_name, pair, product, symmetric, trivial
from .center_commutator import abelianization, center, commutator_subgroupoid, factor_through_abelianization
from .core import Groupoid, RawTable, validate
from .errors import AxiomViolation, GroupoidError, ParseError
from .inner import inner_groupoid, inner_iso, partial_iso_groupoid, verify_inner_iso_theorem
from .morphisms import GroupoidMap, check_map, find_isomorphism, first_iso, kernel
from .normality import is_normal, normal_closure, normalizer, quotient
from .subgroupoid import certify, element_set, generate, generate_wide, subgroupoids, wide_subgroupoids
from .textio import parse, read_groupoid, serialize, write_groupoid

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation", "Groupoid", "GroupoidError", "GroupoidMap", "ParseError", "RawTable",
    "abelianization", "bundle", "center", "certify", "check_map", "commutator_subgroupoid",
    "cyclic", "dihedral", "element_set", "factor_through_abelianization", "find_isomorphism",
    "first_iso", "generate", "generate_wide", "group_by_name", "inner_groupoid", "inner_iso",
    "is_normal", "kernel", "normal_closure", "normalizer", "pair", "parse", "partial_iso_groupoid",
    "product", "quotient", "read_groupoid", "serialize", "subgroupoids", "symmetric", "trivial",
    "validate", "verify_inner_iso_theorem", "wide_subgroupoids", "write_groupoid",
]
