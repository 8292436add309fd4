"""Topos-theoretic structure of finite monoid action categories.

Computes fixed points, connected components, the subobject classifier,
exponentials, tensor products, flatness and the category of points for
categories of right M-sets over finite monoids, and machine-checks the
equivalence theorems relating these to element-level monoid properties.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ActoposError,
    AssocViolation,
    BoundTooSmall,
    CapExceeded,
    CrossCheckError,
    EmptySeed,
    EndpointMismatch,
    IdentityViolation,
    MonoidMismatch,
    NotSubMSet,
    RangeError,
    ShapeMismatch,
    ValidationError,
)
from .monoid import (  # noqa: F401
    ElementClasses,
    Monoid,
    RightCongruence,
    congruence_from_pairs,
    element_classes,
    is_group,
    is_left_cancellative,
    is_right_cancellative,
    is_right_collapsible,
    is_right_ore,
    minimal_rf_generating_set,
    opposite,
    right_factorable_closure,
    submonoid_closure,
    validate_monoid,
)
from .mset import (  # noqa: F401
    BiSet,
    LeftMSet,
    MSetMorphism,
    Partition,
    RightMSet,
    are_isomorphic,
    connected_components,
    coproduct,
    decompose,
    equalizer,
    fixed_points,
    hom_set,
    is_indecomposable,
    is_projective,
    product,
    pullback,
    quotient,
    regular,
    scheme_distance,
    trivial_action,
    validate_biset,
    validate_left_mset,
    validate_right_mset,
)
from .topos import (  # noqa: F401
    Exponential,
    SubobjectClassifier,
    alpha,
    chi_for_C,
    classify,
    exp_transpose,
    exp_untranspose,
    exponential,
    omega,
    preservation_check,
    pullback_of_top,
    theta_for_C,
)
from .flatness import (  # noqa: F401
    FlatnessProfile,
    PointsCategory,
    TensorResult,
    enumerate_points,
    flatness_profile,
    is_flat,
    tensor,
    tensor_hom_adjunction_check,
)
from .enumeration import (  # noqa: F401
    CanonicalForm,
    canonical_form,
    enumerate_monoids,
    enumerate_msets,
)
from .harness import (  # noqa: F401
    HarnessBounds,
    PropertyProfile,
    SuiteReport,
    TheoremReport,
    profile,
    run_suite,
)
