"""Coset enumeration, regular-representation group arithmetic, and
verification of the nu(G) tensor-square extension for finite groups."""

from .words import (
    Word,
    Presentation,
    ParseError,
    parse_presentation,
    presentation_to_dsl,
    word_commutator,
    word_concat_reduce,
    word_conjugate,
    word_inverse,
    cayley_presentation,
)
from .coset import (
    CosetTable,
    EnumLimits,
    LimitExceeded,
    enumerate_presentation,
    enumerate_to_engine,
    to_regular_engine,
    validate_table,
    active_kernel,
)
from .engine import (
    CayleyEngine,
    SubgroupSet,
    Homomorphism,
    HomCertificationError,
    Fingerprint,
    subgroup,
    subgroup_from_points,
    full_subgroup,
    trivial_subgroup,
    normal_closure,
    commutator_subgroup,
    iterated_commutator,
    derived_series,
    lower_central_series,
    center,
    intersection,
    product_points,
    product_set,
    subgroups_equal,
    exponent,
    quotient_engine,
    sub_engine,
    abelian_invariants,
    hom_from_gen_images,
    fingerprint,
    direct_product_engine,
)
from .tensor import tensor_square, biderivation_check
from .nu import NuContext, build_nu, build_nu_presentation
from .verify import CheckResult, CHECKS
from .corpus import CORPUS, corpus_entry, run_corpus

__version__ = "0.1.0"
