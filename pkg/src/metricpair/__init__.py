"""Canonical forms for pairs of bilinear forms on a real plane, the first of
signature (+,-).

Typical use::

    from metricpair import MetricPair, SymForm, classify, canonical_form

    pair = MetricPair(SymForm(1, 0, -1), SymForm(3, 1, 1))
    classify(pair)        # CanonicalClass.HYPERBOLIC
    canonical_form(pair)  # parameters, transition and residuals
"""

__version__ = "0.1.0"

from .associated import (
    AssocOperator,
    CanonicalClass,
    PairInvariants,
    associated_operator,
    classify,
    invariants,
    sigma,
)
from .canonicalize import (
    CanonicalResult,
    boost_for_antidiagonalization,
    boost_for_diagonalization,
    canonical_form,
    canonical_matrices,
    eigen_route_elliptic,
    eigen_route_hyperbolic,
    lorentz,
    parabolic_transition,
    reflection,
)
from .errors import (
    ClassMismatchError,
    DomainError,
    IndeterminateClassification,
    InvalidInputError,
    MetricPairError,
    NumericalDegeneracyError,
    SignatureError,
    SingularTransitionError,
    WrongBranchError,
)
from .forms import MetricPair, SymForm, Transition, compose, congruence, det_form, validate_pair
from .orthonormalize import orthonormal_transition, orthonormalize_pair
from .scalar import DEFAULT_POLICY, IDENTITY_POLICY, TolerancePolicy, atanh_checked, sign_of

__all__ = [
    "AssocOperator",
    "CanonicalClass",
    "CanonicalResult",
    "ClassMismatchError",
    "DEFAULT_POLICY",
    "DomainError",
    "IDENTITY_POLICY",
    "IndeterminateClassification",
    "InvalidInputError",
    "MetricPair",
    "MetricPairError",
    "NumericalDegeneracyError",
    "PairInvariants",
    "SignatureError",
    "SingularTransitionError",
    "SymForm",
    "TolerancePolicy",
    "Transition",
    "WrongBranchError",
    "associated_operator",
    "atanh_checked",
    "boost_for_antidiagonalization",
    "boost_for_diagonalization",
    "canonical_form",
    "canonical_matrices",
    "classify",
    "compose",
    "congruence",
    "det_form",
    "eigen_route_elliptic",
    "eigen_route_hyperbolic",
    "invariants",
    "lorentz",
    "orthonormal_transition",
    "orthonormalize_pair",
    "parabolic_transition",
    "reflection",
    "sigma",
    "sign_of",
    "validate_pair",
]
