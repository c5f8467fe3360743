"""Bases in which the Minkowski-type form reads ``diag(1, -1)``."""

from __future__ import annotations

from typing import Tuple

from .errors import SignatureError
from .forms import MetricPair, SymForm, Transition, Vector, congruence, validate_pair
from .scalar import DEFAULT_POLICY, TolerancePolicy, sqrt


def _pick_anisotropic(g: SymForm) -> Vector:
    # First of e0, e1, e0+e1 whose Rayleigh quotient is at least |g|/4.
    # One always qualifies: if |g00|, |g11| < |g|/4 then |g| = |g01| and
    # |g(e0+e1, e0+e1)| / 2 > 3|g|/4.
    bound = g.norm_inf() / 4
    for v, norm2 in (((1, 0), 1), ((0, 1), 1), ((1, 1), 2)):
        if abs(g(v, v)) >= bound * norm2:
            return v
    raise AssertionError("unreachable for a nonzero form")


def orthogonal_basis(g: SymForm) -> Tuple[Vector, Vector]:
    """Unnormalized g-orthogonal basis ``(v, w)`` with ``g(v,v) > 0 > g(w,w)``.

    Stays in Q for rational input, so exact callers can use it without
    square roots.
    """
    if g.det() >= 0:
        raise SignatureError(g.det())
    v = _pick_anisotropic(g)
    gv = g.apply(v)
    w = (-gv[1], gv[0])
    if g(v, v) < 0:
        v, w = w, v
    return v, w


def orthonormal_transition(g: SymForm) -> Transition:
    """Transition ``S`` with ``S^T g S = diag(1, -1)`` and ``det S > 0``.

    The first new basis vector is timelike. Rational input whose norms are
    rational squares yields an exact rational ``S``.
    """
    v, w = orthogonal_basis(g)
    nv = sqrt(g(v, v))
    nw = sqrt(-g(w, w))
    c0 = (v[0] / nv, v[1] / nv)
    c1 = (w[0] / nw, w[1] / nw)
    S = Transition.from_columns(c0, c1)
    if S.det() < 0:
        S = Transition.from_columns(c0, (-c1[0], -c1[1]))
    return S


def orthonormalize_pair(
    pair: MetricPair, policy: TolerancePolicy = DEFAULT_POLICY
) -> Tuple[MetricPair, Transition]:
    """Carry both forms into a basis orthonormal for ``g``.

    The returned ``g`` is the computed congruence (``diag(1, -1)`` up to
    roundoff), not a substituted constant.
    """
    validate_pair(pair, policy)
    S = orthonormal_transition(pair.g)
    return MetricPair(congruence(pair.g, S), congruence(pair.gcheck, S)), S
