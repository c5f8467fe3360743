"""Explicit bases carrying a metric pair to its canonical presentation.

Two independent constructions are provided for the non-degenerate
classes: hyperbolic boosts that zero the off-diagonal entry (or the
trace-like sum), and eigenvectors of the associated operator. The
public :func:`canonical_form` uses the boost route and keeps the
eigenvector route as a cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from .associated import CanonicalClass, associated_operator, classify
from .errors import (
    DomainError,
    IndeterminateClassification,
    InvalidInputError,
    NumericalDegeneracyError,
    WrongBranchError,
)
from .forms import (
    MetricPair,
    SymForm,
    Transition,
    compose,
    congruence,
    form_distance,
    validate_pair,
)
from .orthonormalize import orthonormalize_pair
from .scalar import DEFAULT_POLICY, IDENTITY_POLICY, TolerancePolicy, atanh_checked

MINKOWSKI = SymForm(1, 0, -1)
NULL_FRAME = SymForm(0, 1, 0)

# relative tolerance for boost-route vs eigen-route parameter agreement
ROUTE_RTOL = 1e-10


def canonical_matrices(label: CanonicalClass, a: float, b: Optional[float] = None) -> Tuple[SymForm, SymForm]:
    """Canonical ``(g, gcheck)`` for a class and its parameters."""
    if label is CanonicalClass.HYPERBOLIC:
        return MINKOWSKI, SymForm(a, 0, b)
    if label is CanonicalClass.ELLIPTIC:
        return MINKOWSKI, SymForm(a, b, -a)
    if label is CanonicalClass.PROPORTIONAL:
        return MINKOWSKI, SymForm(a, 0, -a)
    if label is CanonicalClass.PARABOLIC_POS:
        return NULL_FRAME, SymForm(1, a, 0)
    if label is CanonicalClass.PARABOLIC_NEG:
        return NULL_FRAME, SymForm(0, a, -1)
    raise InvalidInputError(f"unknown class {label!r}")


@dataclass(frozen=True)
class CanonicalResult:
    label: CanonicalClass
    a: float
    b: Optional[float]
    transition: Transition
    residual_g: float
    residual_gcheck: float
    indeterminate: bool = False
    candidates: Tuple[CanonicalClass, ...] = ()
    # max relative (a, b) deviation between the two routes, when both ran
    route_discrepancy: Optional[float] = None
    extras: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def canonical_g(self) -> SymForm:
        return canonical_matrices(self.label, self.a, self.b)[0]

    @property
    def canonical_gcheck(self) -> SymForm:
        return canonical_matrices(self.label, self.a, self.b)[1]

    @property
    def routes_agree(self) -> bool:
        return self.route_discrepancy is None or self.route_discrepancy <= ROUTE_RTOL


def _result(pair: MetricPair, label, a, b, S: Transition, **kw) -> CanonicalResult:
    g_can, gc_can = canonical_matrices(label, a, b)
    fpair = pair.to_float()
    Sf = S.map(float)
    return CanonicalResult(
        label,
        a,
        b,
        S,
        form_distance(congruence(fpair.g, Sf), g_can),
        form_distance(congruence(fpair.gcheck, Sf), gc_can),
        **kw,
    )


# --- elementary transitions -------------------------------------------------


def lorentz(phi: float) -> Transition:
    """Boost ``e0 -> cosh e0 + sinh e1``, ``e1 -> sinh e0 + cosh e1``."""
    if not math.isfinite(phi):
        raise InvalidInputError(f"non-finite boost parameter {phi!r}")
    c, s = math.cosh(phi), math.sinh(phi)
    return Transition(c, s, s, c)


def reflection() -> Transition:
    """``e0 -> e0``, ``e1 -> -e1``; flips the sign of the off-diagonal entry."""
    return Transition(1, 0, 0, -1)


def parabolic_transition(sigma: int, beta: float) -> Transition:
    """Null basis taking the parabolic normal form to its canonical matrices.

    For ``sigma = +1`` the columns are ``(e0+e1)/(2 beta)`` then
    ``beta (e0-e1)``; for ``sigma = -1`` the same two vectors in the
    opposite order. Either way ``g`` becomes ``[[0, 1], [1, 0]]``.
    """
    if not beta > 0 or not math.isfinite(beta):
        raise InvalidInputError(f"beta must be positive and finite, got {beta!r}")
    null_plus = (1 / (2 * beta), 1 / (2 * beta))
    null_minus = (beta, -beta)
    if sigma == 1:
        return Transition.from_columns(null_plus, null_minus)
    if sigma == -1:
        return Transition.from_columns(null_minus, null_plus)
    raise InvalidInputError(f"sigma must be +1 or -1, got {sigma!r}")


def boosted_offdiag(gc: SymForm, phi: float) -> float:
    """Off-diagonal entry of ``gc`` after :func:`lorentz` ``(phi)`` (closed form)."""
    return (gc.m00 + gc.m11) / 2 * math.sinh(2 * phi) + gc.m01 * math.cosh(2 * phi)


def boost_for_diagonalization(gc: SymForm) -> float:
    """Boost parameter that makes ``gc`` diagonal (g-orthonormal frame).

    Requires ``|2 gc01| < |gc00 + gc11|``.
    """
    gc = gc.map(float)
    s, off = gc.m00 + gc.m11, 2 * gc.m01
    if not abs(off) < abs(s):
        raise WrongBranchError(f"need |2 gc01| < |gc00 + gc11|; got {abs(off)} vs {abs(s)}")
    try:
        return atanh_checked(-off / s) / 2
    except DomainError as exc:
        raise WrongBranchError(str(exc)) from exc


def boost_for_antidiagonalization(gc: SymForm) -> float:
    """Boost parameter that makes ``gc00 + gc11`` vanish (g-orthonormal frame).

    Requires ``|2 gc01| > |gc00 + gc11|``.
    """
    gc = gc.map(float)
    s, off = gc.m00 + gc.m11, 2 * gc.m01
    if not abs(off) > abs(s):
        raise WrongBranchError(f"need |2 gc01| > |gc00 + gc11|; got {abs(off)} vs {abs(s)}")
    try:
        return atanh_checked(-s / off) / 2
    except DomainError as exc:
        raise WrongBranchError(str(exc)) from exc


# --- eigenvector routes ------------------------------------------------------


def _eigvec(F, lam):
    (p, q), (r, t) = F.rows()
    u = (q, lam - p)
    v = (lam - t, r)
    nu = abs(u[0]) ** 2 + abs(u[1]) ** 2
    nv = abs(v[0]) ** 2 + abs(v[1]) ** 2
    return u if nu >= nv else v


def eigen_route_hyperbolic(pair: MetricPair) -> CanonicalResult:
    """Diagonalize both forms with real eigenvectors of ``F``.

    The eigenvector with ``g(v, v) > 0`` becomes the first basis vector,
    so ``a`` is its eigenvalue and ``b`` is minus the other one.
    """
    fp = pair.to_float()
    F = associated_operator(fp)
    tr, det = F.trace(), F.det()
    disc = tr * tr - 4 * det
    if not disc > 0:
        raise WrongBranchError(f"real eigen route needs disc > 0, got {disc}")
    root = math.sqrt(disc)
    # avoid cancellation in the smaller root
    big = (tr + math.copysign(root, tr)) / 2 if tr != 0 else root / 2
    small = det / big
    vecs = []
    for lam in (big, small):
        v = _eigvec(F, lam)
        n = fp.g(v, v)
        if n == 0:
            raise NumericalDegeneracyError(f"eigenvector {v} is g-null")
        k = math.sqrt(abs(n))
        vecs.append((n > 0, lam, (v[0] / k, v[1] / k)))
    (t0, l0, v0), (t1, l1, v1) = vecs
    if t0 == t1:
        raise NumericalDegeneracyError("eigenvectors have the same causal type")
    if not t0:
        (l0, v0), (l1, v1) = (l1, v1), (l0, v0)
    # eigenvectors are only defined up to sign; prefer det S > 0
    if v0[0] * v1[1] - v0[1] * v1[0] < 0:
        v1 = (-v1[0], -v1[1])
    S = Transition.from_columns(v0, v1)
    return _result(fp, CanonicalClass.HYPERBOLIC, l0, -l1, S)


def eigen_route_elliptic(pair: MetricPair) -> CanonicalResult:
    """Real basis built from a complex eigenvector ``v`` of ``F``.

    ``v`` is normalized by the complex-bilinear extension of ``g`` so that
    ``g(v, v) = 1``; then ``e0 = sqrt2 Re v`` and ``e1 = sqrt2 Im v``.
    Taking the eigenvalue with positive imaginary part gives ``b > 0``.
    """
    fp = pair.to_float()
    F = associated_operator(fp)
    tr, det = F.trace(), F.det()
    disc = tr * tr - 4 * det
    if not disc < 0:
        raise WrongBranchError(f"complex eigen route needs disc < 0, got {disc}")
    lam = complex(tr / 2, math.sqrt(-disc) / 2)
    v = _eigvec(F, lam)
    n = fp.g(v, v)
    if abs(n) <= IDENTITY_POLICY.atol * (abs(v[0]) ** 2 + abs(v[1]) ** 2) * fp.g.norm_inf():
        raise NumericalDegeneracyError(f"complex eigenvector {v} has g(v, v) = {n}")
    k = cmath.sqrt(n)
    v = (v[0] / k, v[1] / k)
    r2 = math.sqrt(2)
    e0 = (r2 * v[0].real, r2 * v[1].real)
    e1 = (r2 * v[0].imag, r2 * v[1].imag)
    S = Transition.from_columns(e0, e1)
    return _result(fp, CanonicalClass.ELLIPTIC, lam.real, lam.imag, S)


# --- end-to-end --------------------------------------------------------------


def _relative_gap(x: CanonicalResult, y: CanonicalResult) -> float:
    scale = max(abs(x.a), abs(x.b), abs(y.a), abs(y.b))
    if scale == 0:
        return 0.0
    return max(abs(x.a - y.a), abs(x.b - y.b)) / scale


def _hyperbolic(pair, ortho, S0) -> CanonicalResult:
    phi = boost_for_diagonalization(ortho.gcheck)
    L = lorentz(phi)
    gd = congruence(ortho.gcheck, L)
    S = compose(S0, L)
    res = _result(pair, CanonicalClass.HYPERBOLIC, gd.m00, gd.m11, S, extras={"phi": phi})
    check = eigen_route_hyperbolic(ortho)
    return replace(res, route_discrepancy=_relative_gap(res, check))


def _elliptic(pair, ortho, S0) -> CanonicalResult:
    phi = boost_for_antidiagonalization(ortho.gcheck)
    L = lorentz(phi)
    gd = congruence(ortho.gcheck, L)
    S = compose(S0, L)
    a, b = (gd.m00 - gd.m11) / 2, gd.m01
    if b < 0:
        S = compose(S, reflection())
        b = -b
    res = _result(pair, CanonicalClass.ELLIPTIC, a, b, S, extras={"phi": phi})
    check = eigen_route_elliptic(ortho)
    return replace(res, route_discrepancy=_relative_gap(res, check))


def _degenerate(pair, ortho, S0, sigma: int) -> CanonicalResult:
    gc = ortho.gcheck
    s = gc.m00 + gc.m11
    lam = (gc.m00 - gc.m11) / 2
    if sigma == 0:
        return _result(pair, CanonicalClass.PROPORTIONAL, lam, None, S0)
    S = S0
    if (gc.m01 > 0) != (sigma > 0):
        # 2 gc01 = -(gc00 + gc11): reflect to 2 gc01 = gc00 + gc11
        S = compose(S, reflection())
    beta = math.sqrt(abs(s) / 2)
    S = compose(S, parabolic_transition(sigma, beta))
    return _result(pair, CanonicalClass.from_sigma(sigma), lam, None, S)


def _construct(pair: MetricPair, label: CanonicalClass, policy: TolerancePolicy) -> CanonicalResult:
    fpair = pair.to_float()
    ortho, S0 = orthonormalize_pair(fpair, policy)
    if label is CanonicalClass.HYPERBOLIC:
        return _hyperbolic(fpair, ortho, S0)
    if label is CanonicalClass.ELLIPTIC:
        return _elliptic(fpair, ortho, S0)
    sigma = {CanonicalClass.PROPORTIONAL: 0, CanonicalClass.PARABOLIC_POS: 1,
             CanonicalClass.PARABOLIC_NEG: -1}[label]
    return _degenerate(fpair, ortho, S0, sigma)


def canonical_form(pair: MetricPair, policy: TolerancePolicy = DEFAULT_POLICY) -> CanonicalResult:
    """Classify the pair and build the basis realizing its canonical matrices.

    Classification runs in the pair's own backend (exact for rationals);
    the basis is always built in double precision. If the class is
    indeterminate, every candidate is attempted and the one with the
    smallest residual is returned with ``indeterminate=True``.
    """
    validate_pair(pair, policy)
    try:
        label = classify(pair, policy)
    except IndeterminateClassification as exc:
        attempts = []
        for cand in exc.candidates:
            try:
                attempts.append(_construct(pair, cand, policy))
            except (WrongBranchError, NumericalDegeneracyError, InvalidInputError):
                continue
        if not attempts:
            raise
        best = min(attempts, key=lambda r: max(r.residual_g, r.residual_gcheck))
        return replace(best, indeterminate=True, candidates=exc.candidates)
    return _construct(pair, label, policy)

