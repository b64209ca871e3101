"""Workbench for the extension property of codes over finite module alphabets."""

__version__ = "0.1.0"

from .codes import (
    Code,
    IsometryWitness,
    enumerate_codes,
    extend_exhaustive,
    extend_to_monomial,
    linear_isomorphisms,
    span_code,
)
from .ep import (
    EPReport,
    PreservationCertificate,
    PeelViolation,
    certify,
    chain_peel_certificate,
    classify,
    counterexample_search,
    ep_verify,
    idempotent_peel_certificate,
    predict,
    remark_implication_check,
)
from .errors import (
    AxiomError,
    EPWBError,
    NotChainRingError,
    PreconditionError,
    ResourceBoundError,
    SpecError,
)
from .module import (
    FiniteModule,
    ModuleMap,
    Submodule,
    annihilator,
    build_module,
    character_module,
    embeds_in,
    is_cyclic,
    is_pseudo_injective,
    rho_classes,
    socle,
    submodules,
)
from .ring import (
    FiniteRing,
    LeftIdeal,
    build_ring,
    chain_levels,
    idempotent_generator,
    is_chain_ring,
    jacobson_radical,
    left_ideals,
)
from .symmetry import (
    Automorphism,
    MonomialTransformation,
    OrbitIndex,
    SymmetryGroup,
    apply_monomial,
    aut_group,
    lemma1_equivalence_check,
    orbits,
    subgroup_closure,
)
from .weights import WeightContext, WeightProfile, aw_profile, hamming, profile_preserved, swc_profile
