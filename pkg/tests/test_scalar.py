import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metricpair.errors import DomainError, InvalidInputError
from metricpair.scalar import (
    APPROX,
    EXACT,
    TolerancePolicy,
    atanh_checked,
    format_scalar,
    parse_literal,
    sign_of,
    sqrt,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9)


def tanh_bisection(t, lo=-20.0, hi=20.0):
    for _ in range(200):
        mid = (lo + hi) / 2
        if math.tanh(mid) < t:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


class TestSignOf:
    def test_zero(self):
        assert sign_of(0, 1.0, TolerancePolicy()) == 0
        assert sign_of(Fraction(0), 1.0) == 0
        assert sign_of(0.0, 1.0) == 0

    def test_proportional_sum_vanishes(self):
        a = Fraction(5)
        assert sign_of(a + (-a), 1.0) == 0

    def test_inside_band(self):
        assert sign_of(1e-15, 1.0, TolerancePolicy(1e-12, 1e-12)) == 0

    def test_band_edges(self):
        p = TolerancePolicy(1e-9, 1e-9)
        assert sign_of(1.9e-9, 1.0, p) == 0
        assert sign_of(2.1e-9, 1.0, p) == 1
        assert sign_of(-2.1e-9, 1.0, p) == -1
        # rtol scales with the caller's magnitude
        assert sign_of(1e-6, 1e4, p) == 0

    def test_exact_ignores_policy(self):
        huge = TolerancePolicy(1.0, 1.0)
        assert sign_of(Fraction(1, 10**30), 1.0, huge) == 1
        assert sign_of(-1, 1.0, huge) == -1

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite(self, bad):
        with pytest.raises(InvalidInputError):
            sign_of(bad, 1.0)

    def test_negative_scale(self):
        with pytest.raises(InvalidInputError):
            sign_of(1.0, -1.0)

    @given(st.floats(min_value=-1e6, max_value=1e6), st.floats(min_value=0, max_value=1e6))
    def test_odd(self, x, s):
        p = TolerancePolicy()
        assert sign_of(-x, s, p) == -sign_of(x, s, p)


class TestAtanh:
    def test_identity(self):
        assert atanh_checked(0.0) == 0.0

    def test_against_bisection(self):
        frozen = -0.5493061443340548  # tanh_bisection(-0.5)
        assert tanh_bisection(-0.5) == pytest.approx(frozen, abs=1e-15)
        assert atanh_checked(-0.5) == pytest.approx(frozen, abs=1e-15)

    @pytest.mark.parametrize("t", [1.0, -1.0, 1.5, -7.0])
    def test_domain(self, t):
        with pytest.raises(DomainError):
            atanh_checked(t)

    def test_policy_band_near_one(self):
        with pytest.raises(DomainError):
            atanh_checked(1 - 1e-13, TolerancePolicy(1e-12, 0))
        assert math.isfinite(atanh_checked(1 - 1e-13))

    def test_roundtrip_ulps(self):
        rng = random.Random(1234)
        for _ in range(10_000):
            t = rng.uniform(-0.999, 0.999)
            back = math.tanh(atanh_checked(t))
            assert abs(back - t) <= 4 * math.ulp(t)


class TestExactBackend:
    @given(rationals, rationals)
    def test_field_identities(self, x, y):
        assert (x + y) - y == x
        if y != 0:
            assert (x * y) / y == x

    def test_lowest_terms(self):
        x = parse_literal("12/2", EXACT)
        assert x == 6 and x.denominator == 1
        y = parse_literal("4/6", EXACT)
        assert (y.numerator, y.denominator) == (2, 3)

    def test_sqrt_exact_for_squares(self):
        assert sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert isinstance(sqrt(Fraction(9, 4)), Fraction)
        assert sqrt(Fraction(2)) == pytest.approx(math.sqrt(2))
        with pytest.raises(DomainError):
            sqrt(-1)


class TestLiterals:
    def test_rational_string(self):
        assert parse_literal("-32/1", EXACT) == Fraction(-32)
        assert parse_literal("1/3", APPROX) == pytest.approx(1 / 3)
        assert isinstance(parse_literal("1/3", APPROX), float)

    def test_json_numbers(self):
        assert parse_literal(3, EXACT) == Fraction(3)
        assert parse_literal(2.0, EXACT) == Fraction(2)
        assert parse_literal(0.5, EXACT) == 0.5 and isinstance(parse_literal(0.5, EXACT), float)

    @pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", True, None, [1]])
    def test_rejects(self, bad):
        with pytest.raises(InvalidInputError):
            parse_literal(bad, EXACT)

    def test_format(self):
        assert format_scalar(Fraction(-32)) == "-32/1"
        assert format_scalar(Fraction(1, 2)) == "1/2"
        assert format_scalar(0.25) == 0.25
