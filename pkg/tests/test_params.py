import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from curvclose import (
    DomainError,
    ParamPoint,
    QInterval,
    admissible_q_domain,
    bernstein_range,
    d_factor,
    decay_exponent,
    quadratic_aux,
    stability_gap,
    structural_coefficients,
)
from _baselines import baseline


def d_frac(n: int, q: Fraction) -> Fraction:
    # exact rational evaluation of D(n, q)
    gap = Fraction(2, n) - q * q
    aux = q * q + 2 * q + 2
    return 1 + 2 * (1 + q) / gap + 8 * (1 + q) * aux / gap**2


class TestParamPoint:
    def test_rejects_small_dimension(self):
        with pytest.raises(DomainError):
            ParamPoint(1, 0.1)

    def test_rejects_non_integer_dimension(self):
        with pytest.raises(DomainError):
            ParamPoint(3.0, 0.1)

    def test_rejects_negative_or_non_finite_q(self):
        with pytest.raises(DomainError):
            ParamPoint(3, -0.1)
        with pytest.raises(DomainError):
            ParamPoint(3, math.nan)

    def test_boundary_q(self):
        assert ParamPoint(8, 0.1).boundary_q == 0.5


class TestQInterval:
    def test_rejects_degenerate_endpoints(self):
        with pytest.raises(DomainError):
            QInterval(1.0, 1.0)
        with pytest.raises(DomainError):
            QInterval(2.0, 1.0)

    def test_empty_has_no_endpoint_semantics(self):
        empty = QInterval.make_empty()
        assert empty.empty
        assert empty.width == 0.0
        assert not empty.contains(0.0)

    def test_openness_flags(self):
        open_iv = QInterval.open(0.0, 1.0)
        assert not open_iv.contains(0.0) and not open_iv.contains(1.0)
        assert open_iv.contains(0.5)
        closed_iv = QInterval.closed(0.0, 1.0)
        assert closed_iv.contains(0.0) and closed_iv.contains(1.0)


class TestStabilityGap:
    @pytest.mark.parametrize(
        "n,q,expected",
        [(3, 0.0, 2.0 / 3.0), (5, 0.5, 0.15)],
    )
    def test_values(self, n, q, expected):
        assert stability_gap(ParamPoint(n, q)) == pytest.approx(expected, rel=1e-15)

    def test_boundary_root(self):
        q = math.sqrt(2.0 / 3.0)
        assert stability_gap(ParamPoint(3, q)) == pytest.approx(0.0, abs=1e-16)

    def test_negative_beyond_boundary(self):
        assert stability_gap(ParamPoint(5, 0.7)) < 0.0

    @given(
        st.integers(min_value=2, max_value=50),
        st.floats(min_value=0.0, max_value=0.999),
    )
    def test_positive_on_admissible_domain(self, n, u):
        q = u * math.sqrt(2.0 / n)
        assert stability_gap(ParamPoint(n, q)) > 0.0

    @given(
        st.integers(min_value=2, max_value=50),
        st.floats(min_value=0.0, max_value=0.9),
        st.floats(min_value=1e-6, max_value=0.09),
    )
    def test_strictly_decreasing_in_q(self, n, u, du):
        q1 = u * math.sqrt(2.0 / n)
        q2 = (u + du) * math.sqrt(2.0 / n)
        assert stability_gap(ParamPoint(n, q1)) > stability_gap(ParamPoint(n, q2))

    @given(st.integers(min_value=2, max_value=49), st.floats(min_value=0.0, max_value=0.19))
    def test_strictly_decreasing_in_n(self, n, q):
        assert stability_gap(ParamPoint(n, q)) > stability_gap(ParamPoint(n + 1, q))


class TestQuadraticAux:
    @pytest.mark.parametrize("q,expected", [(0.0, 2.0), (1.0, 5.0), (0.5, 3.25)])
    def test_values(self, q, expected):
        assert quadratic_aux(q) == expected

    @given(st.floats(min_value=0.0, max_value=10.0))
    def test_at_least_two(self, q):
        assert quadratic_aux(q) >= 2.0


class TestDFactor:
    def test_exact_rational_values(self):
        assert d_frac(3, Fraction(0)) == 40
        assert d_frac(2, Fraction(0)) == 19

    @pytest.mark.parametrize("n,expected", [(3, 40.0), (2, 19.0)])
    def test_matches_rational_oracle(self, n, expected):
        assert d_factor(ParamPoint(n, 0.0)) == pytest.approx(expected, rel=1e-14)

    def test_exceeds_one_everywhere(self):
        for n in range(2, 13):
            for k in range(1, 20):
                q = k * math.sqrt(2.0 / n) * 0.999 / 20
                assert d_factor(ParamPoint(n, q)) > 1.0

    def test_domain_error_at_closed_gap(self):
        with pytest.raises(DomainError):
            d_factor(ParamPoint(3, 0.9))


class TestStructuralCoefficients:
    def test_degenerate_dimension_two(self):
        coeffs = structural_coefficients(2)
        assert coeffs.alpha == 0.0
        assert coeffs.okumura == 0.0
        assert coeffs.kato == 2.0

    def test_dimension_three(self):
        coeffs = structural_coefficients(3)
        assert coeffs.alpha == pytest.approx(baseline("alpha_n3"), rel=1e-15)
        assert coeffs.okumura == pytest.approx(baseline("okumura_n3"), rel=1e-15)
        assert coeffs.kato == pytest.approx(5.0 / 3.0, rel=1e-16)

    def test_dimension_four(self):
        coeffs = structural_coefficients(4)
        assert coeffs.alpha == pytest.approx(baseline("alpha_n4"), rel=1e-15)
        assert coeffs.kato == 1.5

    @pytest.mark.parametrize("n", range(2, 30))
    def test_alpha_is_n_times_okumura(self, n):
        coeffs = structural_coefficients(n)
        assert coeffs.alpha == pytest.approx(n * coeffs.okumura, rel=1e-15)

    @pytest.mark.parametrize("n", range(2, 30))
    def test_alpha_squared_rational_identity(self, n):
        # n^2 (n-2)^2 / (n (n-1)) reduces to n (n-2)^2 / (n-1) exactly
        assert Fraction(n * n * (n - 2) ** 2, n * (n - 1)) == Fraction(
            n * (n - 2) ** 2, n - 1
        )
        coeffs = structural_coefficients(n)
        assert coeffs.alpha**2 == pytest.approx(n * (n - 2) ** 2 / (n - 1), rel=1e-13)

    def test_rejects_bad_dimension(self):
        with pytest.raises(DomainError):
            structural_coefficients(1)


class TestAdmissibleDomain:
    def test_examples(self):
        assert admissible_q_domain(5).upper == pytest.approx(0.6324555320336759, rel=1e-16)
        assert admissible_q_domain(2) == QInterval.open(0.0, 1.0)
        assert admissible_q_domain(8) == QInterval.open(0.0, 0.5)

    def test_open_at_both_ends(self):
        domain = admissible_q_domain(5)
        assert domain.lower_open and domain.upper_open


class TestBernsteinRange:
    def test_dimension_five_matches_published_range(self):
        interval = bernstein_range(5)
        assert interval.lower == 0.5
        assert interval.upper == pytest.approx(math.sqrt(2.0 / 5.0), rel=1e-16)

    def test_dimension_six_empty(self):
        assert bernstein_range(6).empty

    def test_dimension_three(self):
        interval = bernstein_range(3)
        assert interval.lower == 0.0
        assert interval.upper == pytest.approx(math.sqrt(2.0 / 3.0), rel=1e-16)

    def test_nonempty_iff_dimension_at_most_five(self):
        for n in range(2, 13):
            assert bernstein_range(n).empty == (n > 5)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_decay_negative_inside_range(self, n):
        interval = bernstein_range(n)
        for k in range(1, 101):
            q = interval.lower + k * (interval.upper - interval.lower) / 102
            assert decay_exponent(ParamPoint(n, q)) < 0.0


class TestDecayExponent:
    @pytest.mark.parametrize(
        "n,q,expected",
        [(5, 0.55, -0.1), (5, 0.5, 0.0), (3, 0.1, -1.2)],
    )
    def test_values(self, n, q, expected):
        assert decay_exponent(ParamPoint(n, q)) == pytest.approx(expected, abs=1e-15)
