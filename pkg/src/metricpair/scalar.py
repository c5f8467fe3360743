"""Scalar backends and the zero-test policy.

Two interchangeable scalar types flow through the package:

* exact rationals (:class:`fractions.Fraction`, plain ``int`` accepted),
  used for classification, where every decision is a sign over Q;
* doubles (``float``), used wherever square roots or hyperbolic
  functions appear.

Sign decisions on doubles go through a :class:`TolerancePolicy`: a value
``x`` is zero at scale ``s`` iff ``|x| <= atol + rtol * s``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, InvalidInputError

Scalar = Union[Fraction, int, float]

EXACT = "exact"
APPROX = "approx"
BACKENDS = (EXACT, APPROX)


@dataclass(frozen=True)
class TolerancePolicy:
    atol: float = 1e-9
    rtol: float = 1e-9

    def __post_init__(self):
        if not (self.atol >= 0 and self.rtol >= 0):
            raise InvalidInputError(f"tolerances must be nonnegative: {self}")

    def is_zero(self, x: float, scale: float = 1.0) -> bool:
        return abs(x) <= self.atol + self.rtol * scale


# classification decisions
DEFAULT_POLICY = TolerancePolicy(1e-9, 1e-9)
# identity checks (residuals, orthonormality)
IDENTITY_POLICY = TolerancePolicy(1e-12, 1e-12)


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def check_finite(x) -> None:
    if isinstance(x, float) and not math.isfinite(x):
        raise InvalidInputError(f"non-finite value: {x!r}")


def sign_of(x: Scalar, scale: float = 1.0, policy: TolerancePolicy = DEFAULT_POLICY) -> int:
    """Return -1, 0 or +1.

    Exact scalars get their true sign and the policy is ignored. Doubles
    are declared zero when inside the band ``atol + rtol * scale``.
    """
    if scale < 0 or (isinstance(scale, float) and not math.isfinite(scale)):
        raise InvalidInputError(f"scale must be finite and nonnegative, got {scale!r}")
    if is_exact(x):
        return (x > 0) - (x < 0)
    check_finite(x)
    if policy.is_zero(x, scale):
        return 0
    return 1 if x > 0 else -1


def atanh_checked(t: float, policy: TolerancePolicy | None = None) -> float:
    """Inverse hyperbolic tangent that refuses ``|t| >= 1``.

    With a policy, values within ``policy.atol`` of +-1 are refused as well.
    Callers solving ``tanh(2 phi) = t`` divide the result by two.
    """
    t = float(t)
    check_finite(t)
    edge = 1.0 - (policy.atol if policy is not None else 0.0)
    if abs(t) >= edge:
        raise DomainError(f"atanh argument outside (-1, 1): {t!r}")
    return math.atanh(t)


def to_float(x: Scalar) -> float:
    return float(x)


def to_exact(x: Scalar) -> Fraction:
    """Convert to a Fraction; doubles are converted to their exact binary value."""
    check_finite(x)
    return Fraction(x)


def sqrt(x: Scalar) -> Scalar:
    """Square root that stays in Q when the argument is a rational square."""
    if x < 0:
        raise DomainError(f"square root of negative value {x!r}")
    if is_exact(x):
        x = Fraction(x)
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return Fraction(rn, rd)
    return math.sqrt(x)


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_literal(value, backend: str = APPROX) -> Scalar:
    """Parse one JSON matrix entry.

    Strings must look like ``"p/q"`` (or ``"p"``) with ``q > 0``. JSON
    numbers are exact when integral; non-integral numbers are doubles.
    Under the approximate backend every result is a float.
    """
    if backend not in BACKENDS:
        raise InvalidInputError(f"unknown backend {backend!r}")
    if isinstance(value, bool):
        raise InvalidInputError(f"boolean is not a scalar literal: {value!r}")
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if not m:
            raise InvalidInputError(f"not a rational literal 'p/q': {value!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise InvalidInputError(f"zero denominator in {value!r}")
        exact = Fraction(int(m.group(1)), den)
    elif isinstance(value, int):
        exact = Fraction(value)
    elif isinstance(value, float):
        check_finite(value)
        if value.is_integer():
            exact = Fraction(int(value))
        else:
            return value
    else:
        raise InvalidInputError(f"unsupported scalar literal: {value!r}")
    return exact if backend == EXACT else float(exact)


def format_scalar(x: Scalar):
    """JSON-ready value: ``"p/q"`` string for rationals, float otherwise."""
    if is_exact(x):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    return float(x)
