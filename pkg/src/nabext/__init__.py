"""Exact-arithmetic computations with non-abelian extensions of associative
algebras: Hochschild cochains, the Gerstenhaber bracket, Maurer-Cartan
elements, gauge equivalence, and brute-force classification over prime
fields."""

from .algebra import Algebra, SplitSpace, direct_sum_space
from .classify import (
    BudgetExceededError,
    CandidateSpace,
    ClassificationReport,
    Orbit,
    census,
    enumerate_cocycles,
    enumerate_extensions,
    orbit_partition,
)
from .cochains import (
    MultilinearMap,
    circ,
    circ_i,
    delta_as_bracket,
    gerstenhaber_bracket,
    hochschild_delta,
    hochschild_delta_module,
    identity_map,
    multiplication_map,
)
from .exact_sequences import (
    BrokenExtensionError,
    ExtensionPresentation,
    Section,
    canonical_presentation,
    canonical_section,
    check_extension_equivalence,
    cocycle_from_section,
    enumerate_sections,
    section_difference,
    theta_from_gauge,
    verify_extension,
)
from .fields import GF2, GF3, QQ, Field, FieldError, PrimeField, Rationals, Scalar
from .nonabelian import (
    AbelianStructure,
    CocycleViolation,
    CrossCheckError,
    GaugeParam,
    NabCocycle,
    ViolationKind,
    abelian_specialize,
    apply_equivalence,
    associator_component_table,
    associator_residual,
    beta_element,
    build_extension,
    check_cocycle,
    check_gauge_witness,
    cocycle_from_mc,
    cocycle_to_mc,
    cocycles_equivalent_by,
    derivation_condition_defect,
    gauge_closed_form,
    gauge_series,
    is_mc,
    is_valid_cocycle,
    mc_context,
    mc_residual,
    module_coboundary,
)
from .splitspace import (
    MembershipError,
    all_components,
    bidegrees,
    embed_block_map,
    extract_component,
    in_L,
    l_bracket,
    l_delta,
    patterns,
    project_block_map,
)

__version__ = "0.1.0"
