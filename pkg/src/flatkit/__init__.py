"""flatkit: exact computation with simple matroids and flat-closed classes.

Build small simple matroids (uniform, finite-field columns, projective
geometries, direct sums), interrogate them exactly (rank, closure, flats,
restriction, canonical forms), define hereditary classes by forbidden
flats, and search isomorph-free for the forbidden flats of a class's
extension class, with verification suites for the closure and rank-bound
properties the construction relies on.
"""

from .apex import (
    ClassParams,
    SearchReport,
    WitnessDecomposition,
    class_params,
    extract_witness,
    forbidden_flats_ext,
    verify_axioms,
    verify_lemma,
    verify_oracle,
    verify_theorem_bound,
)
from .classes import (
    ExtensionVerdict,
    HereditaryClass,
    MembershipVerdict,
    Universe,
    binary_targets,
    extension_membership,
    has_flat_isomorphic_to,
    in_class,
    in_extension_class,
    is_minimal_forbidden,
    membership,
)
from .enumeration import EnumLimits, enumerate_universe, extensions, modular_cuts
from .errors import (
    ConfigError,
    EmptyForbiddenListError,
    FlatkitError,
    LoopColumnError,
    NonSimpleError,
    NotForbiddenError,
    ParallelColumnsError,
    ParseError,
    RankTableError,
    TooLargeError,
    UnsupportedFieldError,
    WitnessInvariantError,
)
from .matroid import (
    CANON_CAP,
    EMBED_CAP,
    GROUND_CAP,
    CanonicalKey,
    GFMatrix,
    Matroid,
    canonical_form,
    direct_sum,
    empty_matroid,
    from_matrix,
    projective_geometry,
    uniform,
    validate,
)
from .represent import is_representable

__version__ = "0.1.0"

__all__ = [
    "CANON_CAP",
    "EMBED_CAP",
    "GROUND_CAP",
    "CanonicalKey",
    "ClassParams",
    "ConfigError",
    "EmptyForbiddenListError",
    "EnumLimits",
    "ExtensionVerdict",
    "FlatkitError",
    "GFMatrix",
    "HereditaryClass",
    "LoopColumnError",
    "Matroid",
    "MembershipVerdict",
    "NonSimpleError",
    "NotForbiddenError",
    "ParallelColumnsError",
    "ParseError",
    "RankTableError",
    "SearchReport",
    "TooLargeError",
    "Universe",
    "UnsupportedFieldError",
    "WitnessDecomposition",
    "WitnessInvariantError",
    "binary_targets",
    "canonical_form",
    "class_params",
    "direct_sum",
    "empty_matroid",
    "enumerate_universe",
    "extension_membership",
    "extensions",
    "extract_witness",
    "forbidden_flats_ext",
    "from_matrix",
    "has_flat_isomorphic_to",
    "in_class",
    "in_extension_class",
    "is_minimal_forbidden",
    "is_representable",
    "membership",
    "modular_cuts",
    "projective_geometry",
    "uniform",
    "validate",
    "verify_axioms",
    "verify_lemma",
    "verify_oracle",
    "verify_theorem_bound",
]
