"""Symmetric 2x2 forms, transition matrices and the congruence rule.

A :class:`Transition` ``S`` stores in column ``i`` the old-basis
coordinates of the new basis vector ``e~_i``. Under this convention a
change of basis acts on Gram matrices as ``M -> S^T M S``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Callable, Sequence, Tuple

from .errors import InvalidInputError, SignatureError, SingularTransitionError
from .scalar import (
    DEFAULT_POLICY,
    Scalar,
    TolerancePolicy,
    check_finite,
    is_exact,
    sign_of,
)

Vector = Tuple[Scalar, Scalar]

# singularity is a relative notion; an absolute floor would reject tiny bases
SINGULARITY_POLICY = TolerancePolicy(atol=0.0, rtol=1e-12)


def _entries(obj) -> tuple:
    return tuple(getattr(obj, f.name) for f in fields(obj))


@dataclass(frozen=True)
class SymForm:
    """Gram matrix ``[[m00, m01], [m01, m11]]`` of a symmetric bilinear form."""

    m00: Scalar
    m01: Scalar
    m11: Scalar

    def __post_init__(self):
        for x in _entries(self):
            check_finite(x)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "SymForm":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise InvalidInputError(f"expected a 2x2 matrix, got {rows!r}")
        if rows[0][1] != rows[1][0]:
            raise InvalidInputError(
                f"matrix is not symmetric: [0][1]={rows[0][1]!r} vs [1][0]={rows[1][0]!r}"
            )
        return cls(rows[0][0], rows[0][1], rows[1][1])

    @classmethod
    def diag(cls, a: Scalar, b: Scalar) -> "SymForm":
        return cls(a, 0, b)

    def rows(self) -> Tuple[Vector, Vector]:
        return ((self.m00, self.m01), (self.m01, self.m11))

    def det(self) -> Scalar:
        return self.m00 * self.m11 - self.m01 * self.m01

    def trace(self) -> Scalar:
        return self.m00 + self.m11

    def __call__(self, u: Vector, v: Vector) -> Scalar:
        """Evaluate the bilinear form on coordinate vectors (no conjugation)."""
        return (
            self.m00 * u[0] * v[0]
            + self.m01 * (u[0] * v[1] + u[1] * v[0])
            + self.m11 * u[1] * v[1]
        )

    def apply(self, v: Vector) -> Vector:
        return (self.m00 * v[0] + self.m01 * v[1], self.m01 * v[0] + self.m11 * v[1])

    def map(self, fn: Callable[[Scalar], Scalar]) -> "SymForm":
        return SymForm(fn(self.m00), fn(self.m01), fn(self.m11))

    def scaled(self, c: Scalar) -> "SymForm":
        return self.map(lambda x: c * x)

    def norm_inf(self) -> Scalar:
        return max(abs(self.m00), abs(self.m01), abs(self.m11))

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in _entries(self))


def form_distance(x: SymForm, y: SymForm) -> float:
    """Largest absolute entry of ``x - y``."""
    return float(max(abs(x.m00 - y.m00), abs(x.m01 - y.m01), abs(x.m11 - y.m11)))


@dataclass(frozen=True)
class Transition:
    """Change-of-basis matrix ``[[s00, s01], [s10, s11]]``."""

    s00: Scalar
    s01: Scalar
    s10: Scalar
    s11: Scalar

    def __post_init__(self):
        for x in _entries(self):
            check_finite(x)

    @classmethod
    def identity(cls) -> "Transition":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Transition":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise InvalidInputError(f"expected a 2x2 matrix, got {rows!r}")
        return cls(rows[0][0], rows[0][1], rows[1][0], rows[1][1])

    @classmethod
    def from_columns(cls, c0: Vector, c1: Vector) -> "Transition":
        return cls(c0[0], c1[0], c0[1], c1[1])

    def rows(self) -> Tuple[Vector, Vector]:
        return ((self.s00, self.s01), (self.s10, self.s11))

    def columns(self) -> Tuple[Vector, Vector]:
        return ((self.s00, self.s10), (self.s01, self.s11))

    def det(self) -> Scalar:
        return self.s00 * self.s11 - self.s01 * self.s10

    def norm_inf(self) -> Scalar:
        return max(abs(x) for x in _entries(self))

    def is_singular(self) -> bool:
        return sign_of(self.det(), float(self.norm_inf()) ** 2, SINGULARITY_POLICY) == 0

    def require_invertible(self) -> "Transition":
        if self.is_singular():
            raise SingularTransitionError(f"transition is singular (det = {self.det()})")
        return self

    def inverse(self) -> "Transition":
        self.require_invertible()
        d = self.det()
        if is_exact(d):
            d = Fraction(d)
        return Transition(self.s11 / d, -self.s01 / d, -self.s10 / d, self.s00 / d)

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Transition":
        return Transition(*(fn(x) for x in _entries(self)))

    def __matmul__(self, other: "Transition") -> "Transition":
        return compose(self, other)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in _entries(self))


@dataclass(frozen=True)
class MetricPair:
    """The Minkowski-type form ``g`` together with the second form ``gcheck``."""

    g: SymForm
    gcheck: SymForm

    @property
    def is_exact(self) -> bool:
        return self.g.is_exact and self.gcheck.is_exact

    def map(self, fn: Callable[[Scalar], Scalar]) -> "MetricPair":
        return MetricPair(self.g.map(fn), self.gcheck.map(fn))

    def to_float(self) -> "MetricPair":
        return self.map(float)

    def transformed(self, S: Transition) -> "MetricPair":
        return MetricPair(congruence(self.g, S), congruence(self.gcheck, S))


def congruence(form: SymForm, S: Transition) -> SymForm:
    """Return ``S^T M S``, the Gram matrix of ``form`` in the new basis."""
    S.require_invertible()
    c0, c1 = S.columns()
    return SymForm(form(c0, c0), form(c0, c1), form(c1, c1))


def det_form(form: SymForm) -> Scalar:
    return form.det()


def compose(S1: Transition, S2: Transition) -> Transition:
    """Transition for "first S1, then S2 in the new basis", i.e. ``S1 @ S2``."""
    return Transition(
        S1.s00 * S2.s00 + S1.s01 * S2.s10,
        S1.s00 * S2.s01 + S1.s01 * S2.s11,
        S1.s10 * S2.s00 + S1.s11 * S2.s10,
        S1.s10 * S2.s01 + S1.s11 * S2.s11,
    )


def validate_pair(pair: MetricPair, policy: TolerancePolicy = DEFAULT_POLICY) -> MetricPair:
    """Accept the pair iff ``det g`` is (declared) negative."""
    d = pair.g.det()
    scale = float(pair.g.norm_inf()) ** 2
    if sign_of(d, scale, policy) >= 0:
        raise SignatureError(d)
    return pair
