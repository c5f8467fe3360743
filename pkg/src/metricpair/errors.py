"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MetricPairError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(MetricPairError, ValueError):
    """Malformed, non-finite or otherwise unusable input."""


class SignatureError(MetricPairError):
    """The first form is not of signature (+,-)."""

    def __init__(self, determinant):
        self.determinant = determinant
        super().__init__(
            f"first form must have signature (+,-) (det < 0); got det = {determinant}"
        )


class SingularTransitionError(MetricPairError):
    """A change-of-basis matrix is (declared) singular."""


class DomainError(MetricPairError):
    """A numeric routine was called outside its domain."""


class WrongBranchError(DomainError):
    """A construction was requested for a pair outside its case."""


class ClassMismatchError(MetricPairError):
    """An invariant was requested for a class where it is undefined."""


class NumericalDegeneracyError(MetricPairError):
    """Roundoff made a construction step impossible."""


class IndeterminateClassification(MetricPairError):
    """The approximate backend cannot separate two classes.

    ``candidates`` lists the classes consistent with the data, most
    plausible first; ``invariants`` carries the computed invariants.
    """

    def __init__(self, candidates, invariants, reason: str):
        self.candidates = tuple(candidates)
        self.invariants = invariants
        self.reason = reason
        names = ", ".join(c.value for c in self.candidates)
        super().__init__(f"indeterminate classification ({reason}); candidates: {names}")
