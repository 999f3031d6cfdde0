import math
from fractions import Fraction

import numpy as np
import pytest

from stabindex.catalog import ParticleRecord, table1_fixture
from stabindex.constants import THREE_ROOT_THREE
from stabindex.index import (BinCountOverflow, RatioOutOfRange,
                             SeriesDivergence, bracket_is_positive,
                             build_index_report, check_bracket_inequality,
                             check_partition_inequality, eq19_bound,
                             index_from_eq1, index_lower_bound,
                             series_lower_bound, series_partial_sum)
from stabindex.resonance import DelayProfile, Resonance


class TestIndexFromEq1:
    def test_neutron(self):
        assert index_from_eq1(939.0, 7.43e-25) == 97

    def test_delta_1232(self):
        assert index_from_eq1(1232.0, 120.0) == 6

    def test_exact_ratio_eight_thirds(self):
        assert index_from_eq1(8.0, 3.0) == 3

    def test_n1520(self):
        assert index_from_eq1(1520.0, 123.0) == 6

    def test_scale_consistency(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            mass = rng.uniform(100, 6000)
            width = mass / rng.uniform(3, 1e20)
            scale = rng.uniform(1e-6, 1e6)
            assert index_from_eq1(mass, width) == \
                index_from_eq1(mass * scale, width * scale)

    def test_log_base_invariance(self):
        # argmin in base-2 logs must pick the same n as natural logs
        rng = np.random.default_rng(11)
        for _ in range(200):
            log2_ratio = rng.uniform(1.1, 350.0)
            mass, width = 1.0, 2.0 ** -log2_ratio
            n = np.arange(1, 401)
            dist2 = np.abs(n - np.log2(n) - log2_ratio)
            assert index_from_eq1(mass, width) == int(n[np.argmin(dist2)])

    def test_out_of_range(self):
        with pytest.raises(RatioOutOfRange):
            index_from_eq1(1.0, 1.0)  # ratio 1 < 2
        with pytest.raises(RatioOutOfRange):
            index_from_eq1(1e300, 1e-300)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            index_from_eq1(-1.0, 1.0)


class TestIndexLowerBound:
    def test_neutron(self):
        assert index_lower_bound(939.0, 7.43e-25) == 93

    def test_sigma_1750(self):
        assert index_lower_bound(1750.0, 110.0) == 7

    def test_b_meson(self):
        assert index_lower_bound(5280.0, 4.39e-10) == 46

    def test_exact_integer_bound_rounds_up(self):
        estar = 100.0
        assert index_lower_bound(estar, THREE_ROOT_THREE * estar) == 1

    def test_monotone_in_width_and_estar(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            estar = rng.uniform(100, 6000)
            w1, w2 = sorted(rng.uniform(1e-25, estar, 2))
            assert index_lower_bound(estar, w1) >= index_lower_bound(estar, w2)
            e1, e2 = sorted(rng.uniform(100, 6000, 2))
            width = rng.uniform(1e-20, 1.0)
            assert index_lower_bound(e1, width) <= index_lower_bound(e2, width)


class TestBracketInequality:
    def test_neutron_extended_precision_oracle(self):
        estar, gamma, n0 = 939.0, 7.43e-25, 93
        chk = check_bracket_inequality(estar, gamma, n0)
        assert chk.holds
        # exact rational arithmetic for both sides
        lhs = Fraction(estar) / Fraction(gamma)
        c = Fraction(THREE_ROOT_THREE)
        rhs = Fraction(2 ** n0, n0) * (1 - c * Fraction(estar) /
                                       (2 ** n0 * Fraction(gamma)))
        assert (lhs >= rhs) == chk.holds
        assert chk.lhs == pytest.approx(float(lhs))
        assert chk.rhs == pytest.approx(float(rhs), rel=1e-12)

    def test_delta_1232_bracket_positive(self):
        chk = check_bracket_inequality(1232.0, 120.0, 6)
        assert chk.holds
        # bracket term: 3sqrt3 * 1232 / (64 * 120) ~ 0.833 < 1
        assert THREE_ROOT_THREE * 1232.0 / (64 * 120.0) == pytest.approx(0.8336,
                                                                         abs=1e-3)
        assert bracket_is_positive(1232.0, 120.0, 6)

    def test_negative_bracket_holds_trivially(self):
        # 2^n0 below 3sqrt3 E*/Gamma makes the right side negative
        chk = check_bracket_inequality(1232.0, 120.0, 3)
        assert chk.rhs < 0 < chk.lhs
        assert chk.holds
        assert not bracket_is_positive(1232.0, 120.0, 3)

    def test_holds_for_every_fixture_row(self):
        for rec in table1_fixture():
            chk = check_bracket_inequality(rec.mass_mev, rec.width_mev,
                                           rec.expected_n0)
            assert chk.holds, rec.name


class TestSeriesBound:
    def test_n0_ten(self):
        assert series_lower_bound(10) == pytest.approx(1024.0 / 15.19615, rel=1e-5)

    def test_neutron_ratio(self):
        ratio = series_lower_bound(97) / (2.0 ** 97 / 97)
        assert ratio == pytest.approx(97.0 / 102.196, rel=1e-4)
        assert ratio == pytest.approx(0.9492, abs=1e-3)

    def test_large_n0_limit(self):
        assert series_lower_bound(300) / (2.0 ** 300 / 300) == pytest.approx(1.0,
                                                                             abs=0.02)

    def test_always_below_empirical(self):
        for n0 in range(1, 401):
            assert series_lower_bound(n0) < 2.0 ** n0 / n0

    def test_partial_sum_converges_to_closed_form(self):
        for n0 in (10, 50, 97):
            assert series_partial_sum(n0, 200) == pytest.approx(
                series_lower_bound(n0), rel=1e-12)

    def test_divergence_flagged(self):
        for n0 in (1, 3, 5):
            with pytest.raises(SeriesDivergence):
                series_partial_sum(n0, 10)
        # closed form itself stays available
        assert series_lower_bound(5) > 0


class TestPartitionInequality:
    def test_narrow_resonance_centered_holds(self):
        estar, gamma = 1000.0, 1.0
        n = 14  # bin width 1000/2^14 ~ 0.061 <= gamma/10
        width = estar / 2 ** n
        assert width <= gamma / 10
        e0 = 500.0
        start = int(e0 / width) - n // 2
        p = DelayProfile([Resonance(e0, gamma)], (0.0, estar))
        chk = check_partition_inequality(estar, p, n, start)
        assert chk.holds
        assert chk.lhs <= chk.rhs

    def test_no_resonances_in_covered_bins(self):
        estar = 1000.0
        p = DelayProfile([Resonance(900.0, 1.0)], (0.0, estar))
        chk = check_partition_inequality(estar, p, 10, start_bin=100)
        assert chk.lhs < 0.01  # tails only
        assert chk.holds

    def test_broad_resonance_reported_not_asserted(self):
        estar = 10.0
        p = DelayProfile([Resonance(5.0, 5.0)], (0.0, estar))
        chk = check_partition_inequality(estar, p, 1, start_bin=0)
        assert math.isfinite(chk.lhs) and math.isfinite(chk.rhs)
        assert chk.holds == (chk.lhs <= chk.rhs)

    def test_bin_count_overflow(self):
        p = DelayProfile([Resonance(5.0, 1.0)], (0.0, 10.0))
        with pytest.raises(BinCountOverflow):
            check_partition_inequality(10.0, p, 63)

    def test_start_bin_range(self):
        p = DelayProfile([Resonance(5.0, 1.0)], (0.0, 10.0))
        with pytest.raises(ValueError):
            check_partition_inequality(10.0, p, 4, start_bin=13)


class TestIndexReport:
    def test_jpsi(self):
        rep = build_index_report(ParticleRecord("J/ψ(1S)", 3100.0, 8.8e-2))
        assert (rep.n_eq1, rep.n0_eq19, rep.agrees_within) == (19, 18, 1)

    def test_psi_4415(self):
        rep = build_index_report(ParticleRecord("ψ(4415)", 4415.0, 43.0))
        assert (rep.n_eq1, rep.n0_eq19, rep.agrees_within) == (10, 10, 0)

    def test_lambda(self):
        rep = build_index_report(ParticleRecord("Λ", 1120.0, 2.5e-12))
        assert (rep.n_eq1, rep.n0_eq19, rep.agrees_within) == (54, 52, 2)

    def test_all_fixture_rows_reproduce(self):
        for rec in table1_fixture():
            rep = build_index_report(rec)
            assert rep.n_eq1 == rec.expected_n, rec.name
            assert rep.n0_eq19 == rec.expected_n0, rec.name

    def test_bound_is_strictly_below_published_index(self):
        for rec in table1_fixture():
            b = eq19_bound(rec.mass_mev, rec.width_mev)
            assert rec.expected_n0 - 1 <= b < rec.expected_n0
