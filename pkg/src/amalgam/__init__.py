"""Decide whether every diagram of a finite shape can be amalgamated.

Given a finite category as a composition table, the library determines
whether every diagram of that shape admits a cocone in every category with
the amalgamation property (and joint embedding property), returning either a
replayable forest decomposition certificate with a constructive cocone
builder, or a concrete finite-sets diagram verified to have no cocone.
"""

from .decide import CertificateEvidence, RefutationEvidence, Verdict, decide, explain
from .diagram import (
    Cocone,
    CoconeResult,
    Collision,
    ColimitResult,
    FinInjDiagram,
    ShapeAnalysis,
    ZigzagWord,
    analyze_shape,
    build_cocone_forest,
    colimit_set,
    has_cocone,
    pushout_inj,
    shrink_witness,
    validate_diagram,
    witness_no_cocone,
    zigzag_action,
)
from .fincat import (
    Congruence,
    FinCategory,
    FunctorMap,
    Morphism,
    category,
    category_from_poset,
    congruence_close,
    connected_components,
    is_monic,
    is_preorder,
    monic_reflection,
    quotient_category,
    skeleton_poset,
    validate_category,
)
from .invcat import (
    FinInverseCategory,
    check_inverse_laws,
    is_idempotent_category,
    validate_inverse,
    wagner_preston,
)
from .pinj import PartialInjection
from .poset import (
    DecompositionNode,
    FinPoset,
    ForestCertificate,
    NonForestWitness,
    brute_force_tree_like,
    components,
    is_forest_like,
    replay_certificate,
    simply_connected_bounded,
    upward_closure,
    verify_certificate,
    verify_witness,
)

__version__ = "0.1.0"
