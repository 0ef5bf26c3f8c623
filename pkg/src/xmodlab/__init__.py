"""xmodlab: finite groups with operations, crossed modules, internal
groupoids, homotopies, derivations and Whitehead groups, all computed
exhaustively from integer operation tables."""

from .core import (
    DEFAULT_BUDGET,
    GROUP_SIGNATURE,
    AlgMorphism,
    OmegaAlgebra,
    Signature,
    automorphism_group,
    check_morphism,
    compose_morphisms,
    enumerate_morphisms,
    identity_morphism,
    kernel_of,
    make_algebra,
    product_algebra,
    validate_algebra,
)
from .actions import (
    ActionSet,
    SplitExtension,
    action_from_section,
    canonical_split_extension,
    check_derived_action,
    check_split_extension,
    conjugation_action,
    make_action,
    semidirect_product,
    trivial_action,
)
from .xmod import (
    CrossedModule,
    XModMorphism,
    check_xmod_morphism,
    compose_xmod_morphisms,
    identity_xmod_morphism,
    is_covering,
    make_crossed_module,
    validate_crossed_module,
    zero_xmod_morphism,
)
from .groupoid import (
    InternalFunctor,
    InternalGroupoid,
    check_internal_functor,
    compose_internal_functors,
    identity_functor,
    make_groupoid,
    pair_groupoid,
    roundtrip_crossed_module,
    roundtrip_groupoid,
    to_crossed_module,
    to_internal_groupoid,
    validate_groupoid,
)
from .homotopy import (
    GroupoidHomotopy,
    XModHomotopy,
    functor_of_morphism,
    homotopy_to_natural_iso,
    horizontal_compose,
    make_xmod_homotopy,
    natural_iso_to_homotopy,
    validate_groupoid_homotopy,
    validate_xmod_homotopy,
    vertical_compose,
    vertical_compose_natural_isos,
    whisker_left,
    whisker_right,
)
from .derivations import (
    Derivation,
    RegularityCertificate,
    WhiteheadGroup,
    check_derivation,
    derivation_as_homotopy,
    endomorphism_of,
    enumerate_derivations,
    invert_derivation,
    is_derivation,
    is_regular,
    kernel_image_predicate,
    make_derivation,
    whitehead_compose,
    whitehead_group,
    zero_derivation,
)
from .derived import (
    DerivedChain,
    derived_action_general,
    derived_action_regular,
    derived_crossed_module,
    derived_iso,
    iterate_chain,
    transport_derivation,
)
from .reporting import ValidationReport, Violation

__version__ = "0.1.0"
