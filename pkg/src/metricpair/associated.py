"""The associated operator, pair invariants, sigma and the class decision."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ClassMismatchError, IndeterminateClassification
from .forms import MetricPair, validate_pair
from .orthonormalize import orthogonal_basis
from .scalar import DEFAULT_POLICY, Scalar, TolerancePolicy, is_exact, sign_of


class CanonicalClass(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC_POS = "parabolic_pos"
    PARABOLIC_NEG = "parabolic_neg"
    PROPORTIONAL = "proportional"

    @classmethod
    def from_sigma(cls, sigma: int) -> "CanonicalClass":
        return {0: cls.PROPORTIONAL, 1: cls.PARABOLIC_POS, -1: cls.PARABOLIC_NEG}[sigma]

    @property
    def is_degenerate(self) -> bool:
        """True for the zero-discriminant rows (sigma is defined)."""
        return self not in (CanonicalClass.HYPERBOLIC, CanonicalClass.ELLIPTIC)


@dataclass(frozen=True)
class AssocOperator:
    """Matrix of ``F = g^{-1} gcheck`` (upper index first)."""

    f00: Scalar
    f01: Scalar
    f10: Scalar
    f11: Scalar

    def trace(self) -> Scalar:
        return self.f00 + self.f11

    def det(self) -> Scalar:
        return self.f00 * self.f11 - self.f01 * self.f10

    def rows(self):
        return ((self.f00, self.f01), (self.f10, self.f11))


@dataclass(frozen=True)
class PairInvariants:
    trace: Scalar
    determinant: Scalar
    discriminant: Scalar
    sigma: Optional[int] = None


@dataclass(frozen=True)
class OrthoFrame:
    """The second form as seen in a g-orthonormal basis.

    ``total`` and ``diff`` are ``gc00 + gc11`` and ``gc00 - gc11``;
    ``offdiag_sq`` is ``gc01**2``. All three stay rational for rational
    input because they are computed from an unnormalized orthogonal basis.
    """

    total: Scalar
    diff: Scalar
    offdiag_sq: Scalar

    @property
    def scale(self) -> float:
        off = math.sqrt(float(self.offdiag_sq))
        gc00 = abs(float(self.total + self.diff)) / 2
        gc11 = abs(float(self.total - self.diff)) / 2
        return max(gc00, gc11, off, 1.0)


def associated_operator(pair: MetricPair) -> AssocOperator:
    """``F^i_j = sum_s g^{is} gcheck_{sj}``."""
    g, gc = pair.g, pair.gcheck
    d = g.det()
    if is_exact(d):
        d = Fraction(d)
    # inverse of g is [[g11, -g01], [-g01, g00]] / det g
    return AssocOperator(
        (g.m11 * gc.m00 - g.m01 * gc.m01) / d,
        (g.m11 * gc.m01 - g.m01 * gc.m11) / d,
        (g.m00 * gc.m01 - g.m01 * gc.m00) / d,
        (g.m00 * gc.m11 - g.m01 * gc.m01) / d,
    )


def ortho_frame(pair: MetricPair) -> OrthoFrame:
    g, gc = pair.g, pair.gcheck
    v, w = orthogonal_basis(g)
    gvv, gww = g(v, v), g(w, w)
    if is_exact(gvv) and is_exact(gww):
        gvv, gww = Fraction(gvv), Fraction(gww)
    p = gc(v, v) / gvv
    q = -gc(w, w) / gww
    off = gc(v, w)
    return OrthoFrame(p + q, p - q, off * off / (gvv * -gww))


def discriminant_scale(trace: Scalar, determinant: Scalar) -> float:
    return max(float(trace) ** 2, 4 * abs(float(determinant)), 1.0)


def _sigma_from_frame(frame: OrthoFrame, policy: TolerancePolicy) -> int:
    return sign_of(frame.total, frame.scale, policy)


def invariants(pair: MetricPair, policy: TolerancePolicy = DEFAULT_POLICY) -> PairInvariants:
    """Trace, determinant and discriminant of ``F``; sigma when disc is zero."""
    validate_pair(pair, policy)
    F = associated_operator(pair)
    tr, det = F.trace(), F.det()
    disc = tr * tr - 4 * det
    sigma = None
    if sign_of(disc, discriminant_scale(tr, det), policy) == 0:
        sigma = _sigma_from_frame(ortho_frame(pair), policy)
    return PairInvariants(tr, det, disc, sigma)


def sigma(pair: MetricPair, policy: TolerancePolicy = DEFAULT_POLICY) -> int:
    """Sign of ``gc00 + gc11`` in a g-orthonormal basis.

    Only defined for a zero discriminant; elsewhere the sign depends on
    which orthonormal basis is used.
    """
    inv = invariants(pair, policy)
    if inv.sigma is None:
        raise ClassMismatchError(
            f"sigma is only defined for zero discriminant; disc = {inv.discriminant}"
        )
    return inv.sigma


def classify(pair: MetricPair, policy: TolerancePolicy = DEFAULT_POLICY) -> CanonicalClass:
    """Return the canonical class of the pair.

    Rational pairs are decided exactly. For doubles a discriminant inside
    the zero band is accepted only if the orthonormal-frame data agree
    with it; otherwise :class:`IndeterminateClassification` is raised.
    """
    inv = invariants(pair, policy)
    scale = discriminant_scale(inv.trace, inv.determinant)
    d = sign_of(inv.discriminant, scale, policy)
    if d > 0:
        return CanonicalClass.HYPERBOLIC
    if d < 0:
        return CanonicalClass.ELLIPTIC
    label = CanonicalClass.from_sigma(inv.sigma)
    if pair.is_exact:
        return label

    frame = ortho_frame(pair)
    off2 = 2 * math.sqrt(float(frame.offdiag_sq))
    s = abs(float(frame.total))
    if inv.sigma == 0:
        consistent = policy.is_zero(off2, frame.scale)
        reason = "sum gc00+gc11 is zero but the off-diagonal entry is not"
    else:
        consistent = policy.is_zero(s - off2, frame.scale)
        reason = "|2 gc01| and |gc00+gc11| disagree"
    if consistent:
        return label
    raw = float(inv.discriminant)
    if raw > 0:
        others = [CanonicalClass.HYPERBOLIC]
    elif raw < 0:
        others = [CanonicalClass.ELLIPTIC]
    else:
        others = [CanonicalClass.HYPERBOLIC, CanonicalClass.ELLIPTIC]
    raise IndeterminateClassification([label, *others], inv, reason)
