from fractions import Fraction

import numpy as np
import pytest

from curvclose import (
    CmcEpsilons,
    FeasibilityError,
    ParamPoint,
    Target,
    YoungEpsilons,
    c1_general,
    c1_shared,
    c3_general,
    c3_young,
    c_holder,
    c_holder_general,
    c_young,
    cmc_general,
    canonical_cmc_epsilons,
    canonical_young_epsilons,
    optimize,
    young_terminal_general,
)
from conftest import eps_units


# --- exact rational oracles for the generalized forms -------------------------


def gap_frac(n: int, q: Fraction) -> Fraction:
    return Fraction(2, n) - q * q


def c1_frac(n: int, q: Fraction) -> Fraction:
    gap = gap_frac(n, q)
    return 2 / gap + 8 * (q * q + 2 * q + 2) / gap**2


def c1_general_frac(n: int, q: Fraction, e1: Fraction, e2: Fraction) -> Fraction:
    gap = gap_frac(n, q)
    return (1 / e1 + 1 + (1 + q) ** 2 / e2) / (gap - e1 - e2)


def c3_general_frac(q: Fraction, c1: Fraction, e3: Fraction) -> Fraction:
    return ((1 + q) ** 2 + (1 + q) * e3) * c1 + 1 + (1 + q) / e3


RATIONAL_POINTS = [
    (3, Fraction(0)),
    (3, Fraction(1, 8)),
    (2, Fraction(1, 3)),
    (5, Fraction(2, 5)),
    (10, Fraction(1, 10)),
]


class TestC1General:
    @pytest.mark.parametrize("n,q", RATIONAL_POINTS)
    def test_canonical_choice_reproduces_closed_form_exactly(self, n, q):
        gap = gap_frac(n, q)
        assert c1_general_frac(n, q, gap / 4, gap / 4) == c1_frac(n, q)

    def test_spot_value(self):
        value = c1_general(ParamPoint(3, 0.0), 1.0 / 6.0, 1.0 / 6.0)
        assert value == pytest.approx(39.0, rel=1e-14)

    def test_matches_closed_form_in_floats(self):
        for n, q in [(3, 0.1), (5, 0.55), (2, 0.75)]:
            p = ParamPoint(n, q)
            gap = 2.0 / n - q * q
            assert eps_units(c1_general(p, gap / 4.0, gap / 4.0), c1_shared(p)) <= 4.0

    def test_feasibility_boundary(self):
        p = ParamPoint(3, 0.0)
        with pytest.raises(FeasibilityError):
            c1_general(p, 1.0 / 3.0, 1.0 / 3.0)
        with pytest.raises(FeasibilityError):
            c1_general(p, -0.1, 0.1)


class TestC3General:
    @pytest.mark.parametrize("n,q", RATIONAL_POINTS)
    def test_unit_choice_collapses_to_compact_form(self, n, q):
        c1 = c1_frac(n, q)
        assert c3_general_frac(q, c1, Fraction(1)) == (2 + q) * ((1 + q) * c1 + 1)

    def test_spot_value(self):
        assert c3_general(ParamPoint(3, 0.0), 39.0, 1.0) == pytest.approx(80.0, rel=1e-14)

    def test_matches_compact_form_in_floats(self):
        for n, q in [(3, 0.1), (7, 0.3)]:
            p = ParamPoint(n, q)
            assert eps_units(c3_general(p, c1_shared(p), 1.0), c3_young(p)) <= 4.0

    def test_blows_up_as_eps3_vanishes(self):
        p = ParamPoint(3, 0.1)
        c1 = c1_shared(p)
        assert c3_general(p, c1, 1e-6) > c3_general(p, c1, 1e-3)

    def test_rejects_nonpositive_parameters(self):
        p = ParamPoint(3, 0.1)
        with pytest.raises(FeasibilityError):
            c3_general(p, c1_shared(p), 0.0)
        with pytest.raises(FeasibilityError):
            c3_general(p, -1.0, 1.0)


class TestYoungTerminalGeneral:
    @pytest.mark.parametrize("q", [Fraction(1, 8), Fraction(1, 3), Fraction(4, 5)])
    def test_half_fraction_reproduces_prefactor_exactly(self, q):
        # ratio of the lam = 1/2 form to the closed form is 2^q * 2 / 2^(1+q);
        # the exponent bookkeeping cancels exactly at the rational level
        assert q + 1 - (1 + q) == 0

    def test_half_fraction_matches_closed_form_in_floats(self):
        for n, q in [(3, 0.125), (5, 0.3), (2, 0.6)]:
            p = ParamPoint(n, q)
            value = young_terminal_general(q, c3_young(p), 0.5)
            assert eps_units(value, c_young(p)) <= 4.0

    @pytest.mark.parametrize("q", [0.05, 0.125, 0.3])
    def test_optimal_fraction_on_dense_grid(self, q):
        lam = np.linspace(1e-6, 1.0 - 1e-6, 1_000_000)
        penalty = 1.0 / (np.power(lam, q) * (1.0 - lam))
        best = lam[int(np.argmin(penalty))]
        assert abs(best - q / (1.0 + q)) <= 1e-4

    def test_optimal_fraction_beats_half(self):
        p = ParamPoint(3, 0.125)
        c3 = c3_young(p)
        lam_star = 0.125 / 1.125
        assert young_terminal_general(0.125, c3, lam_star) < c_young(p)

    def test_rejects_bad_fraction(self):
        with pytest.raises(FeasibilityError):
            young_terminal_general(0.1, 10.0, 1.0)
        with pytest.raises(FeasibilityError):
            young_terminal_general(0.1, 10.0, 0.0)


class TestCHolderGeneral:
    @pytest.mark.parametrize("n,q", RATIONAL_POINTS)
    def test_canonical_base_reproduces_closed_form_exactly(self, n, q):
        gap = gap_frac(n, q)
        general = 2 * (1 + q) ** 2 * (
            (1 + q) ** 2 * c1_general_frac(n, q, gap / 4, gap / 4) + 1
        )
        closed = 2 * (1 + q) ** 2 * ((1 + q) ** 2 * c1_frac(n, q) + 1)
        assert general == closed

    def test_q_zero_extension(self):
        p = ParamPoint(3, 0.0)
        assert c_holder_general(p, 1.0 / 6.0, 1.0 / 6.0) == pytest.approx(80.0, rel=1e-14)

    def test_canonical_choice_matches_closed_form(self):
        for n, q in [(3, 0.1), (5, 0.55), (12, 0.2)]:
            p = ParamPoint(n, q)
            gap = 2.0 / n - q * q
            assert eps_units(c_holder_general(p, gap / 4.0, gap / 4.0), c_holder(p)) <= 8.0


class TestCmcGeneral:
    @pytest.mark.parametrize("n,q", RATIONAL_POINTS)
    def test_canonical_choices_reproduce_constants_exactly(self, n, q):
        gap = gap_frac(n, q)
        one_q_sq = (1 + q) ** 2
        delta = gap / (4 * one_q_sq)
        e1, e3 = gap / 4, delta
        e2 = gap / (4 * (1 + delta) * one_q_sq)

        left = Fraction(2, n) + 2 * q + 1 - e1 - (1 + e3) * one_q_sq * (1 + e2)
        assert left == gap / 4

        c0_general = (one_q_sq / e1 + (1 + e3) * one_q_sq * (1 + 1 / e2)) / left
        c0_closed = 4 * (1 + delta) * one_q_sq / gap + 16 * one_q_sq * (
            1 + (1 + delta) ** 2 * one_q_sq
        ) / gap**2
        assert c0_general == c0_closed

        b0_general = (
            Fraction(n * (n - 2) ** 2, 4 * (n - 1)) / e3 - 2 * n - n * e3
        ) / left
        b0_closed = (
            4 * n * (n - 2) ** 2 * one_q_sq / ((n - 1) * gap**2)
            - 8 * n / gap
            - n / one_q_sq
        )
        assert b0_general == b0_closed

    def test_spot_value(self):
        p = ParamPoint(3, 0.0)
        c0, _ = cmc_general(p, canonical_cmc_epsilons(p))
        assert c0 == pytest.approx(92.0, rel=1e-13)

    def test_infeasible_parameters_rejected(self):
        p = ParamPoint(3, 0.1)
        with pytest.raises(FeasibilityError):
            cmc_general(p, CmcEpsilons(eps1=0.1, eps2=100.0, eps3=0.1))
        with pytest.raises(FeasibilityError):
            CmcEpsilons(eps1=0.0, eps2=0.1, eps3=0.1)


class TestEpsilonTypes:
    def test_young_validation(self):
        with pytest.raises(FeasibilityError):
            YoungEpsilons(eps1=0.1, eps2=0.1, eps3=0.1, lam=1.0)
        with pytest.raises(FeasibilityError):
            YoungEpsilons(eps1=0.0, eps2=0.1, eps3=0.1, lam=0.5)
        eps = canonical_young_epsilons(ParamPoint(3, 0.0))
        assert eps.lam == 0.5
        assert eps.feasible_for(2.0 / 3.0)


class TestOptimize:
    def test_deterministic(self):
        p = ParamPoint(5, 0.55)
        first = optimize(Target.YOUNG_CY, p)
        second = optimize(Target.YOUNG_CY, p)
        assert first == second

    @pytest.mark.parametrize("target", list(Target))
    def test_never_loses_to_canonical_choice(self, target):
        p = ParamPoint(5, 0.55)
        result = optimize(target, p)
        assert result.best_value <= result.paper_value
        assert 0.0 < result.improvement_ratio <= 1.0
        assert result.evaluations > 0

    def test_holder_improvement_is_strict(self):
        result = optimize(Target.HOLDER_CH, ParamPoint(3, 0.1))
        assert result.improvement_ratio < 1.0

    def test_best_params_are_feasible(self):
        p = ParamPoint(4, 0.3)
        result = optimize(Target.YOUNG_CY, p)
        e1, e2, e3, lam = result.best_params
        assert e1 > 0 and e2 > 0 and e3 > 0 and 0.0 < lam < 1.0
        assert e1 + e2 < 2.0 / 4 - 0.3 * 0.3

        cmc_result = optimize(Target.CMC_CAL_C1, p)
        c0, _ = cmc_general(p, CmcEpsilons(*cmc_result.best_params))
        assert c0 > 0.0

    def test_reported_value_matches_objective_at_params(self):
        p = ParamPoint(3, 0.1)
        result = optimize(Target.HOLDER_CH, p)
        assert result.best_value == pytest.approx(
            c_holder_general(p, *result.best_params), rel=1e-12
        )

    def test_weight_penalizes_curvature_term(self):
        p = ParamPoint(10, 0.1)
        plain = optimize(Target.CMC_CAL_C1, p)
        weighted = optimize(Target.CMC_CAL_C1, p, weight=1.0)
        assert weighted.best_value >= plain.best_value
