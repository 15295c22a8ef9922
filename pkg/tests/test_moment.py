import math
from fractions import Fraction

import pytest

from fordspheres import moment, region
from fordspheres.gint import DomainError, GInt


def g(re, im=0):
    return GInt(re, im)


class TestConstant:
    def test_value(self):
        assert moment.constant_C() == pytest.approx(0.686440070037642, abs=1e-10)

    def test_above_one_half(self):
        assert moment.constant_C() > 0.5

    def test_schemes_agree(self):
        c = moment.constant_C()
        assert moment.constant_C_series() == pytest.approx(c, abs=1e-12)
        assert moment.constant_C_tanh_sinh() == pytest.approx(c, abs=1e-12)


class TestBundle:
    def test_invariants(self):
        b = moment.constants_bundle()
        assert b.C > 0.5
        assert b.main_coeff > 0
        assert b.main_coeff == pytest.approx(
            math.pi * b.zeta_i_inv_2 * (8 * b.C - 1), rel=1e-15
        )
        assert b.z1 == pytest.approx(math.pi / 8 * b.zeta_i_inv_2, rel=1e-15)
        assert b.main_coeff == pytest.approx(9.3652, abs=2e-4)

    def test_zeta_product_consistency(self):
        b = moment.constants_bundle()
        assert b.zeta_i_2 * b.zeta_i_inv_2 == pytest.approx(1.0, abs=1e-5)


class TestMainTerm:
    def test_quadratic_scaling(self):
        assert moment.main_term(20) == pytest.approx(4 * moment.main_term(10))

    def test_zero(self):
        assert moment.main_term(0) == 0.0


class TestDirect:
    def test_level_one_is_four(self):
        rep = moment.moment_first_direct(1)
        assert rep.value == 4.0
        assert rep.method == "direct"

    def test_frozen_baselines(self):
        # regression values from the exhaustive scan
        assert moment.moment_first_direct(2).value == 8.0
        assert moment.moment_first_direct(3).value == float(Fraction(1016, 45))
        assert moment.moment_first_direct(4).value == float(Fraction(27067, 780))

    def test_positive(self):
        for S in (1, 2, 5):
            assert moment.moment_first_direct(S).value > 0

    def test_cap_enforced(self):
        with pytest.raises(DomainError):
            moment.moment_first_direct(13)
        moment.moment_first_direct(13, cap=13)  # explicit raise of the cap works


class TestCounting:
    def test_level_one_normalizations(self):
        assert moment.moment_first_counting(1, "omega_full").value == 8.0
        assert moment.moment_first_counting(1, "omega_quarter").value == 2.0

    def test_level_two(self):
        assert moment.moment_first_counting(2).value == pytest.approx(22.0)

    def test_delegates_to_region_counts(self):
        S = 3
        counts = moment.consecutive_partner_counts(S)
        denoms = moment._canonical_denominators(S)
        for q, c in zip(denoms, counts):
            assert c == region.omega_lattice_count(region.OmegaSpec(q, S), True)

    def test_threads_do_not_change_bytes(self):
        # S = 12 has enough denominators to actually engage the pool
        assert len(moment._canonical_denominators(12)) > 64
        a = moment.moment_first_counting(12, threads=1)
        b = moment.moment_first_counting(12, threads=2)
        c = moment.moment_first_counting(12, threads=5)
        assert a.value == b.value == c.value

    def test_unknown_normalization(self):
        with pytest.raises(DomainError):
            moment.moment_first_counting(2, "foo")

    def test_cap(self):
        with pytest.raises(DomainError):
            moment.moment_first_counting(300)


class TestCalibration:
    def test_small_ratios(self):
        ratios = moment.calibration_ratios((1, 2, 4))
        assert ratios[1] == pytest.approx(2.0)
        assert ratios[2] == pytest.approx(2.75)
        assert ratios[4] == pytest.approx(126.02735042735043 / 34.70128205128205, rel=1e-12)

    def test_direct_equals_quarter_plus_real_axis_extra(self):
        # The quarter normalization assumes four fraction pairs per
        # denominator pair; the only exceptions are pairs of rational
        # integers (the classical consecutive Farey denominators
        # q < q', coprime, q + q' > S), which realize eight.  Adding four
        # extra radius sums per such pair reconciles the two pipelines
        # exactly, in rational arithmetic.
        from math import gcd as int_gcd

        from fordspheres import farey
        from fordspheres.gint import norm

        for S in range(2, 11):
            direct = Fraction(0)
            for f1, f2 in farey.consecutive_pairs(S):
                direct += Fraction(1, 2 * norm(f1.den)) + Fraction(1, 2 * norm(f2.den))
            quarter = Fraction(0)
            counts = moment.consecutive_partner_counts(S)
            for q, c in zip(moment._canonical_denominators(S), counts):
                assert c % 4 == 0
                quarter += Fraction(c // 4, norm(q))
            quarter *= 2
            extra = Fraction(0)
            for q in range(1, S + 1):
                for qp in range(q + 1, S + 1):
                    if int_gcd(q, qp) == 1 and q + qp > S:
                        extra += 4 * (Fraction(1, 2 * q * q) + Fraction(1, 2 * qp * qp))
            assert direct == quarter + extra, S


class TestSums:
    def test_sum_A_base(self):
        exact, _ = moment.sum_A(1)
        assert exact == pytest.approx(math.pi)

    def test_sum_A_vs_counts_at_64(self):
        exact, _ = moment.sum_A(64)
        from fordspheres import arith

        total = 0.0
        sieve = arith.get_sieve(64 * 64)
        sl = sieve.upto(64)
        for x, y, n, ph in zip(sieve.re[sl], sieve.im[sl], sieve.norms[sl], sieve.phi[sl]):
            spec = region.OmegaSpec(g(int(x), int(y)), 64)
            total += ph / n**2 * region.omega_lattice_count(spec)
        assert abs(total - exact) <= 50.0  # measured gap is ~13.1
        assert abs(total - exact) / exact <= 0.005

    def test_sum_B_base(self):
        assert moment.sum_B(1, 0.1) == pytest.approx(8 * math.pi)

    def test_sum_B_matches_direct_accumulation(self):
        from fordspheres.arith import canonical_cells

        S, eps = 16, 0.2
        _, _, nrm = canonical_cells(S * S)
        expected = 8 * math.pi * S * sum(float(n) ** (-(1 - eps / 2)) for n in nrm)
        assert moment.sum_B(S, eps) == pytest.approx(expected, rel=1e-12)

    def test_sum_B_epsilon_domain(self):
        with pytest.raises(DomainError):
            moment.sum_B(4, 0.0)

    def test_sum_A_doubling_trend(self):
        # exact(2S)/exact(S) approaches the quadratic factor 4
        early = moment.sum_A(32)[0] / moment.sum_A(16)[0]
        late = moment.sum_A(256)[0] / moment.sum_A(128)[0]
        assert abs(late - 4.0) < abs(early - 4.0)
        assert abs(late - 4.0) < 0.05

    def test_phi_sums_base(self):
        exact2, _ = moment.sum_phi_over_norm2(1)
        assert exact2 == 1.0
        assert moment.sum_phi_over_norm4(1) == 1.0

    def test_slope_fit_sane_at_small_scale(self):
        slope, intercept = moment.fit_phi_over_norm4((32, 64, 128, 256))
        target = 4 * moment.constants_bundle().z1
        assert slope == pytest.approx(target, rel=0.05)
        assert intercept > 0


class TestSweep:
    def test_shape(self):
        sweep = moment.report_sweep((1, 2, 4, 8), methods=("direct", "counting"))
        assert len(sweep.reports) == 8
        assert not sweep.errors
        for rep in sweep.reports:
            assert rep.residual == pytest.approx(rep.value - rep.main_term)

    def test_main_term_rows(self):
        sweep = moment.report_sweep((3,), methods=("main_term",))
        rep = sweep.reports[0]
        assert rep.value == rep.main_term == moment.main_term(3)
        assert rep.residual == 0.0

    def test_row_failures_recorded(self):
        sweep = moment.report_sweep((2, 20), methods=("direct",))
        assert len(sweep.reports) == 1
        assert len(sweep.errors) == 1
        assert sweep.errors[0][0] == 20

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            moment.report_sweep((1,), methods=("nope",))
