import math
from random import Random

import pytest

from fordspheres.gint import DomainError, GInt, ONE, is_coprime
from fordspheres.region import (
    OmegaSpec,
    boundary_length_surrogate,
    coprime_count_prediction,
    omega_area,
    omega_area_bounds_check,
    omega_area_monte_carlo,
    omega_area_quadrature,
    omega_contains,
    omega_lattice_count,
    omega_lattice_count_bruteforce,
)


def g(re, im=0):
    return GInt(re, im)


class TestSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            OmegaSpec(g(0, 2), 5)  # not canonical
        with pytest.raises(DomainError):
            OmegaSpec(g(3, 3), 4)  # |s| > S
        with pytest.raises(DomainError):
            OmegaSpec(ONE, 0)


class TestMembership:
    def test_origin_never_member(self):
        for spec in (OmegaSpec(ONE, 1), OmegaSpec(g(2, 1), 4)):
            assert not omega_contains(g(0, 0), spec)

    def test_unit_point(self):
        assert omega_contains(ONE, OmegaSpec(ONE, 1))

    def test_rotation_invariance_exact(self):
        for s, S in ((ONE, 2), (g(1, 1), 3), (g(2, 1), 4)):
            spec = OmegaSpec(s, S)
            for x in range(-S, S + 1):
                for y in range(-S, S + 1):
                    z = g(x, y)
                    assert omega_contains(z, spec) == omega_contains(g(-y, x), spec)


class TestArea:
    def test_collapses_to_disc_at_max_modulus(self):
        for S in (1, 2, 7):
            assert omega_area(OmegaSpec(g(S, 0), S)) == pytest.approx(math.pi * S * S)

    def test_reference_value(self):
        assert omega_area(OmegaSpec(ONE, 2)) == pytest.approx(9.073376604636506, rel=1e-12)

    def test_matches_quadrature(self):
        rng = Random(42)
        for _ in range(15):
            S = rng.randint(2, 60)
            while True:
                a, b = rng.randint(1, S), rng.randint(0, S)
                if a * a + b * b <= S * S:
                    break
            spec = OmegaSpec(g(a, b), S)
            assert omega_area(spec) == pytest.approx(omega_area_quadrature(spec), rel=1e-9)

    def test_matches_monte_carlo(self):
        spec = OmegaSpec(ONE, 2)
        mc = omega_area_monte_carlo(spec, samples=200_000, seed=1)
        assert abs(mc - omega_area(spec)) < 0.15

    def test_thin_region_limit(self):
        # area ~ 4 sqrt(2) S |s| for |s| << S
        area = omega_area(OmegaSpec(ONE, 10_000))
        assert area == pytest.approx(4 * math.sqrt(2) * 10_000, rel=1e-3)

    def test_lower_bounds(self):
        assert omega_area_bounds_check(OmegaSpec(g(4, 0), 4))
        assert omega_area_bounds_check(OmegaSpec(ONE, 10))
        for S in (4, 8):
            for a in range(1, S + 1):
                for b in range(0, S + 1):
                    if 1 <= a * a + b * b <= S * S:
                        assert omega_area_bounds_check(OmegaSpec(g(a, b), S))


class TestLatticeCount:
    def test_units_at_level_one(self):
        assert omega_lattice_count(OmegaSpec(ONE, 1), coprime_filter=True) == 4

    def test_filtered_below_unfiltered(self):
        for s, S in ((g(1, 1), 4), (g(2, 0), 5), (g(3, 1), 6)):
            spec = OmegaSpec(s, S)
            assert omega_lattice_count(spec, True) <= omega_lattice_count(spec, False)

    def test_fast_equals_bruteforce(self):
        for s, S in ((ONE, 1), (ONE, 4), (g(1, 1), 3), (g(2, 1), 5), (g(2, 2), 6), (g(3, 0), 7)):
            spec = OmegaSpec(s, S)
            for filt in (False, True):
                assert omega_lattice_count(spec, filt) == omega_lattice_count_bruteforce(
                    spec, filt
                ), (s, S, filt)

    def test_unit_orbit_structure(self):
        # the full-plane count is four times the count over canonical
        # representatives
        spec = OmegaSpec(g(1, 1), 3)
        full = omega_lattice_count(spec, True)
        canonical_members = [
            g(x, y)
            for x in range(1, 4)
            for y in range(0, 4)
            if omega_contains(g(x, y), spec) and is_coprime(g(x, y), spec.s)
        ]
        assert full == 4 * len(canonical_members)
        assert full % 4 == 0

    def test_count_tracks_area(self):
        for S in (4, 8, 16):
            for a in range(1, S + 1):
                for b in range(0, S + 1):
                    if 1 <= a * a + b * b <= S * S:
                        spec = OmegaSpec(g(a, b), S)
                        dev = abs(omega_lattice_count(spec) - omega_area(spec))
                        assert dev <= 2.0 * S


class TestPrediction:
    def test_unit_denominator_prediction_is_area(self):
        spec = OmegaSpec(ONE, 5)
        assert coprime_count_prediction(spec) == pytest.approx(omega_area(spec))

    def test_half_density_for_one_plus_i(self):
        spec = OmegaSpec(g(1, 1), 4)
        assert coprime_count_prediction(spec) == pytest.approx(omega_area(spec) / 2)
        count = omega_lattice_count(spec, True)
        pred = coprime_count_prediction(spec)
        assert abs(count - pred) / pred < 0.2

    def test_mean_deviation_small_sweep(self):
        devs = []
        S = 16
        for a in range(1, S + 1):
            for b in range(0, S + 1):
                if 1 <= a * a + b * b <= S * S:
                    spec = OmegaSpec(g(a, b), S)
                    count = omega_lattice_count(spec, True)
                    pred = coprime_count_prediction(spec)
                    devs.append(abs(count - pred) / pred)
        assert sum(devs) / len(devs) <= 0.10


class TestBoundarySurrogate:
    def test_base_value(self):
        assert boundary_length_surrogate(OmegaSpec(ONE, 1)) == pytest.approx(8 * math.pi)

    def test_linear_scaling(self):
        a = boundary_length_surrogate(OmegaSpec(ONE, 10))
        b = boundary_length_surrogate(OmegaSpec(ONE, 20))
        assert b == pytest.approx(2 * a)
