"""Brute-force verifiers and seeded instance generators.

Everything here is deliberately independent of the construction code in
:mod:`metricpair.canonicalize`: the grid search evaluates the closed-form
boosted off-diagonal entry directly, and generated instances come from
canonical matrices scrambled by a known rational congruence.

Randomness is counter-based (Philox keyed by ``(seed, index)``), so any
instance can be regenerated from two integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .associated import CanonicalClass
from .canonicalize import CanonicalResult, canonical_matrices
from .errors import InvalidInputError
from .forms import MetricPair, SymForm, Transition, compose, congruence

CLASSES = tuple(CanonicalClass)
DENOMINATORS = (1, 2, 3, 4, 5, 8)
PARAM_RANGE = 10


def boosted_offdiag_oracle(gc: SymForm, phi):
    """``(gc00 + gc11)/2 * sinh 2phi + gc01 * cosh 2phi``, vectorized over phi."""
    s = float(gc.m00) + float(gc.m11)
    return s / 2 * np.sinh(2 * phi) + float(gc.m01) * np.cosh(2 * phi)


def grid_min_offdiag(
    gc: SymForm, phi_range: Tuple[float, float] = (-5.0, 5.0), steps: int = 4001
) -> Tuple[float, float]:
    """Minimize ``|boosted gc01|`` over a phi grid, then golden-section refine.

    Returns ``(phi_star, min_value)``.
    """
    if steps < 3:
        raise InvalidInputError("need at least 3 grid steps")
    lo, hi = phi_range
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InvalidInputError(f"bad phi range {phi_range!r}")
    grid = np.linspace(lo, hi, steps)
    vals = np.abs(boosted_offdiag_oracle(gc, grid))
    i = int(np.argmin(vals))
    best_phi, best_val = float(grid[i]), float(vals[i])
    if best_val == 0.0 or i == 0 or i == steps - 1:
        return best_phi, best_val

    def f(phi):
        return abs(float(boosted_offdiag_oracle(gc, phi)))

    try:
        res = optimize.minimize_scalar(
            f, bracket=(grid[i - 1], grid[i], grid[i + 1]), method="golden",
            options={"xtol": 1e-12},
        )
    except ValueError:
        # flat neighbourhood: no strict bracket
        return best_phi, best_val
    if res.fun <= best_val:
        return float(res.x), float(res.fun)
    return best_phi, best_val


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    count: int = 100
    class_filter: Optional[CanonicalClass] = None
    max_condition: float = 10.0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed must be a 64-bit unsigned integer")
        if self.count < 1:
            raise InvalidInputError("count must be positive")
        if not self.max_condition >= 1:
            raise InvalidInputError("max_condition must be >= 1")


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed + (index << 64)))


def random_rational(
    rng: np.random.Generator, lo, hi, denominators: Sequence[int] = DENOMINATORS
) -> Fraction:
    """Rational ``p/q`` in ``[lo, hi]`` with ``q`` drawn from ``denominators``."""
    q = int(rng.choice(denominators))
    lo_n, hi_n = math.ceil(lo * q), math.floor(hi * q)
    return Fraction(int(rng.integers(lo_n, hi_n, endpoint=True)), q)


def _rational_rotation(t: Fraction) -> Transition:
    # rational point on the unit circle
    d = 1 + t * t
    c, s = (1 - t * t) / d, 2 * t / d
    return Transition(c, -s, s, c)


def random_congruence(rng: np.random.Generator, max_condition: float = 10.0) -> Transition:
    """Rational ``S = R1 diag(s1, s2) R2`` with ``s_max / s_min <= max_condition``.

    Entries lie in ``[-10, 10]``; a random reflection makes either sign of
    ``det S`` possible.
    """
    if not max_condition >= 1:
        raise InvalidInputError("max_condition must be >= 1")
    r1 = _rational_rotation(random_rational(rng, -1, 1))
    r2 = _rational_rotation(random_rational(rng, -1, 1))
    s1 = random_rational(rng, Fraction(1, 2), 2)
    kappa = Fraction(math.floor(max_condition * 1000), 1000)
    top = min(kappa, 10 / s1)
    ratio = random_rational(rng, 1, top) if top > 1 else Fraction(1)
    s2 = s1 * ratio
    if rng.integers(2):
        s1, s2 = s2, s1
    sign = -1 if rng.integers(2) else 1
    return compose(compose(r1, Transition(s1, 0, 0, sign * s2)), r2)


def condition_number(S: Transition) -> float:
    return float(np.linalg.cond(np.array(S.map(float).rows())))


def sample_params(label: CanonicalClass, rng: np.random.Generator):
    """Draw ``(a, b)`` in ``[-10, 10]`` respecting the class constraints."""
    a = random_rational(rng, -PARAM_RANGE, PARAM_RANGE)
    if label is CanonicalClass.HYPERBOLIC:
        while True:
            b = random_rational(rng, -PARAM_RANGE, PARAM_RANGE)
            if a + b != 0:
                return a, b
    if label is CanonicalClass.ELLIPTIC:
        while True:
            b = random_rational(rng, 0, PARAM_RANGE)
            if b > 0:
                return a, b
    return a, None


def check_params(label: CanonicalClass, a, b) -> None:
    if label is CanonicalClass.HYPERBOLIC:
        if b is None or a + b == 0:
            raise InvalidInputError("hyperbolic class needs b != -a")
    elif label is CanonicalClass.ELLIPTIC:
        if b is None or not b > 0:
            raise InvalidInputError("elliptic class needs b > 0")
    elif b is not None:
        raise InvalidInputError(f"class {label.value} takes no b parameter")


def random_pair(
    label: CanonicalClass,
    params: Tuple,
    rng: Optional[np.random.Generator] = None,
    max_condition: float = 10.0,
    scramble: Optional[Transition] = None,
) -> Tuple[MetricPair, CanonicalResult]:
    """Canonical pair for ``label`` seen through a random change of basis.

    Returns the scrambled pair and its ground truth; the true canonical
    transition is the inverse of the scrambling matrix. Without ``rng`` or
    ``scramble`` the identity is used.
    """
    a, b = (tuple(params) + (None,))[:2]
    check_params(label, a, b)
    g_can, gc_can = canonical_matrices(label, a, b)
    if scramble is None:
        scramble = random_congruence(rng, max_condition) if rng is not None else Transition.identity()
    pair = MetricPair(congruence(g_can, scramble), congruence(gc_can, scramble))
    truth = CanonicalResult(label, a, b, scramble.inverse(), 0.0, 0.0)
    return pair, truth


@dataclass(frozen=True)
class Instance:
    index: int
    pair: MetricPair
    truth: CanonicalResult


def generate(config: FuzzConfig) -> Iterator[Instance]:
    """Deterministic instance stream; classes cycle unless filtered."""
    for i in range(config.count):
        rng = instance_rng(config.seed, i)
        label = config.class_filter or CLASSES[i % len(CLASSES)]
        params = sample_params(label, rng)
        pair, truth = random_pair(label, params, rng, config.max_condition)
        yield Instance(i, pair, truth)
