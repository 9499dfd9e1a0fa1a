"""Exact arithmetic for fibered Burnside rings.

Build a finite group, pick an abelian fiber, and get the subcharacter
orbit basis, double-coset products, marks and mark tables, the ghost ring
with its mark morphism, and search/verification for species isomorphisms
between two such rings.
"""

from .errors import GroupInputError, InternalConsistencyError, SizeLimitError
from .fibers import (
    Character,
    FiberGroup,
    char_inverse,
    char_product,
    conjugate_character,
    hom_set,
    parse_fiber,
    trivial_character,
)
from .ghost import (
    GhostElement,
    ghost_basis,
    ghost_identity,
    ghost_multiply,
    mark_convolution,
    mark_morphism,
    mark_sum_above,
    mult_coeff_from_marks,
    verify_injectivity,
)
from .groups import (
    GROUP_ORDER_CAP,
    FiniteGroup,
    Subgroup,
    SubgroupClassification,
    build_group,
    conjugate_subgroup,
    double_coset_reps,
    fixed_points_count,
    subgroups,
)
from .ring import (
    MarkTable,
    RingElement,
    basis_product,
    burnside_subring_check,
    identity_element,
    mark,
    mark_table,
    mark_via_mult_coeff,
    mult_coeff,
    multiply,
)
from .species import (
    GhostRingMap,
    SpeciesMap,
    SubcharBijection,
    build_ghost_iso,
    check_iso_invariants,
    find_all_species_isos,
    find_species_iso,
    fingerprint,
    iter_species_maps,
    lift_to_subchar_bijection,
    verify_marks_and_ghost,
    verify_orbit_map,
    verify_subchar_coeffs,
)
from .subchars import (
    Subcharacter,
    SubcharacterTable,
    build_table,
    orbit_leq,
    stabilizer,
    subchar_leq,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
