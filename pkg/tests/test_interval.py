import math

import pytest
from hypothesis import given, strategies as st

from curvclose import DomainError, Interval
from curvclose.interval import iexp, ilog, ipow, isquare, ixpowx


finite_floats = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def make_interval(a: float, b: float) -> Interval:
    return Interval(min(a, b), max(a, b))


class TestConstruction:
    def test_orders_endpoints_strictly(self):
        with pytest.raises(DomainError):
            Interval(2.0, 1.0)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            Interval(0.0, math.inf)

    def test_point_and_accessors(self):
        box = Interval(1.0, 3.0)
        assert box.mid == 2.0
        assert box.width == 2.0
        assert box.contains(1.0) and box.contains(3.0)
        assert not box.contains(3.1)
        assert Interval.point(5.0).width == 0.0

    def test_encloses(self):
        assert Interval(0.0, 1.0).encloses(Interval(0.25, 0.75))
        assert not Interval(0.0, 1.0).encloses(Interval(0.5, 1.5))


class TestArithmeticSoundness:
    @given(finite_floats, finite_floats, finite_floats, finite_floats, st.floats(0, 1), st.floats(0, 1))
    def test_add_sub_mul_contain_samples(self, a, b, c, d, t, u):
        x_box = make_interval(a, b)
        y_box = make_interval(c, d)
        x = x_box.lo + t * (x_box.hi - x_box.lo)
        y = y_box.lo + u * (y_box.hi - y_box.lo)
        assert (x_box + y_box).contains(x + y)
        assert (x_box - y_box).contains(x - y)
        assert (x_box * y_box).contains(x * y)

    @given(finite_floats, finite_floats, st.floats(0.5, 100.0), st.floats(1.0, 2.0), st.floats(0, 1), st.floats(0, 1))
    def test_div_contains_samples(self, a, b, c, scale, t, u):
        x_box = make_interval(a, b)
        y_box = Interval(c, c * scale)
        x = x_box.lo + t * (x_box.hi - x_box.lo)
        y = y_box.lo + u * (y_box.hi - y_box.lo)
        assert (x_box / y_box).contains(x / y)

    def test_division_by_zero_straddling_interval(self):
        with pytest.raises(DomainError):
            Interval(1.0, 2.0) / Interval(-1.0, 1.0)

    def test_scalar_promotion(self):
        box = Interval(1.0, 2.0)
        assert (box + 1).contains(3.0)
        assert (1 - box).contains(-0.5)
        assert (2 * box).contains(4.0)
        assert (1.0 / box).contains(0.75)

    def test_widening_is_outward(self):
        result = Interval.point(1.0) + Interval.point(2.0)
        assert result.lo < 3.0 < result.hi

    def test_negation_is_exact(self):
        box = Interval(-1.0, 2.0)
        assert (-box).lo == -2.0 and (-box).hi == 1.0


class TestSquare:
    def test_straddling_zero_clamps_to_zero(self):
        box = isquare(Interval(-2.0, 3.0))
        assert box.lo <= 0.0 <= box.hi
        assert box.contains(0.0) and box.contains(9.0)

    @given(finite_floats, finite_floats, st.floats(0, 1))
    def test_contains_samples(self, a, b, t):
        box = make_interval(a, b)
        x = box.lo + t * (box.hi - box.lo)
        assert isquare(box).contains(x * x)


class TestTranscendental:
    def test_log_domain(self):
        with pytest.raises(DomainError):
            ilog(Interval(0.0, 1.0))
        with pytest.raises(DomainError):
            ilog(Interval(-1.0, -0.5))

    @given(st.floats(1e-12, 1e6), st.floats(1.0, 3.0), st.floats(0, 1))
    def test_log_contains_samples(self, lo, scale, t):
        box = Interval(lo, lo * scale)
        x = box.lo + t * (box.hi - box.lo)
        assert ilog(box).contains(math.log(x))

    @given(st.floats(-10.0, 10.0), st.floats(0.0, 2.0), st.floats(0, 1))
    def test_exp_contains_samples(self, lo, width, t):
        box = Interval(lo, lo + width)
        x = box.lo + t * (box.hi - box.lo)
        assert iexp(box).contains(math.exp(x))

    def test_exp_overflow_raises(self):
        with pytest.raises(DomainError):
            iexp(Interval(0.0, 1000.0))

    @given(st.floats(0.01, 50.0), st.floats(1.0, 2.0), st.floats(0.1, 4.0), st.floats(0, 1))
    def test_pow_contains_samples(self, lo, scale, exponent, t):
        box = Interval(lo, lo * scale)
        x = box.lo + t * (box.hi - box.lo)
        assert ipow(box, exponent).contains(x**exponent)

    def test_pow_interval_exponent(self):
        base = Interval(2.0, 3.0)
        expo = Interval(1.0, 2.0)
        result = ipow(base, expo)
        for x, y in [(2.0, 1.0), (3.0, 2.0), (2.5, 1.5)]:
            assert result.contains(x**y)

    def test_pow_requires_positive_base(self):
        with pytest.raises(DomainError):
            ipow(Interval(-1.0, 2.0), 2.0)


class TestXPowX:
    def test_degenerate_zero_is_limit(self):
        assert ixpowx(Interval.point(0.0)) == Interval.point(1.0)

    def test_zero_to_small_uses_limit_upper_bound(self):
        box = ixpowx(Interval(0.0, 0.2))
        assert box.hi >= 1.0
        assert box.contains(0.2**0.2)
        assert box.contains(0.01**0.01)

    def test_zero_past_turning_point(self):
        box = ixpowx(Interval(0.0, 0.9))
        turning = math.exp(-1.0)
        assert box.contains(turning**turning)
        assert box.contains(0.9**0.9)
        assert box.hi >= 1.0

    @pytest.mark.parametrize(
        "lo,hi",
        [(0.05, 0.2), (0.05, 0.36), (0.2, 0.36), (0.4, 0.9), (0.36, 0.37), (0.001, 0.999)],
    )
    def test_contains_dense_samples(self, lo, hi):
        box = ixpowx(Interval(lo, hi))
        for k in range(51):
            x = lo + k * (hi - lo) / 50
            assert box.contains(x**x)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            ixpowx(Interval(-0.1, 0.1))


class TestIsotonicity:
    @given(
        st.floats(0.01, 0.7),
        st.floats(0.01, 0.2),
        st.floats(0.2, 0.8),
    )
    def test_subinterval_enclosure_is_tighter(self, lo, width, inner):
        parent = Interval(lo, lo + width)
        mid = parent.lo + inner * width
        child = Interval(parent.lo, mid)
        for op in (lambda b: b + 1.0, lambda b: b * 1.7, isquare, ilog, iexp):
            assert op(parent).encloses(op(child))
