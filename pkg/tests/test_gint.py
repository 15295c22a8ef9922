import math
from random import Random

import pytest

from fordspheres.gint import (
    DomainError,
    GInt,
    I,
    ONE,
    ParseError,
    UNITS,
    ZERO,
    canonical,
    canonicalize,
    div_rem,
    divides,
    factor,
    format_gint,
    gcd,
    is_canonical,
    is_coprime,
    norm,
    parse_gint,
    two_squares_prime,
    xgcd,
)


def g(re, im=0):
    return GInt(re, im)


class TestCanonicalize:
    def test_already_canonical(self):
        assert canonicalize(ONE) == (ONE, ONE)

    def test_minus_three_i(self):
        unit, can = canonicalize(g(0, -3))
        assert (unit, can) == (g(0, -1), g(3, 0))
        assert unit * can == g(0, -3)

    def test_minus_one_plus_i(self):
        unit, can = canonicalize(g(-1, 1))
        assert (unit, can) == (I, g(1, 1))
        assert unit * can == g(-1, 1)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            canonicalize(ZERO)

    def test_orbit_bijection(self):
        # each unit orbit has exactly one canonical member, and every orbit
        # element canonicalizes to it; exhaustive over norms <= 10^4
        from fordspheres.arith import canonical_cells

        rex, imy, _ = canonical_cells(10_000)
        for x, y in zip(rex, imy):
            q = g(int(x), int(y))
            orbit = [u * q for u in UNITS]
            assert {canonical(z) for z in orbit} == {q}
            assert [z for z in orbit if is_canonical(z)] == [q]


class TestNormAndDivision:
    def test_norm_values(self):
        assert norm(ZERO) == 0
        assert norm(g(1, 1)) == 2
        assert norm(g(3, 2)) == 13

    def test_norm_is_exact_for_huge_values(self):
        big = g(10**30, -(10**31))
        assert norm(big) == 10**60 + 10**62

    def test_exact_quotient(self):
        assert div_rem(g(2), g(1, 1)) == ((g(1, -1)), ZERO)

    def test_half_tie_rounds_to_even(self):
        quot, rem = div_rem(g(5), g(2))
        assert (quot, rem) == (g(2), g(1))
        assert norm(rem) * 2 <= norm(g(2))

    def test_unit_denominator(self):
        for q in (g(7, -3), g(0, 5), ONE):
            assert div_rem(q, ONE) == (q, ZERO)

    def test_zero_divisor(self):
        with pytest.raises(DomainError):
            div_rem(ONE, ZERO)

    def test_remainder_contract_random(self):
        rng = Random(2024)
        for _ in range(100_000):
            a = g(rng.randint(-999, 999), rng.randint(-999, 999))
            b = g(rng.randint(-99, 99), rng.randint(-99, 99))
            if not b:
                continue
            quot, rem = div_rem(a, b)
            assert quot * b + rem == a
            assert 2 * norm(rem) <= norm(b)


def _common_divisors_bruteforce(a, b):
    out = []
    bound = min(norm(a), norm(b))
    r = math.isqrt(bound)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            d = GInt(x, y)
            if d and norm(d) <= bound and divides(d, a) and divides(d, b):
                out.append(d)
    return out


class TestGcd:
    def test_examples(self):
        assert gcd(g(1, 1), g(2)) == g(1, 1)
        assert gcd(g(3), g(5)) == ONE
        assert gcd(g(-7, 3), ZERO) == canonical(g(-7, 3))

    def test_both_zero(self):
        with pytest.raises(DomainError):
            gcd(ZERO, ZERO)

    def test_coprime_examples(self):
        assert is_coprime(ONE, g(1, 1))
        assert not is_coprime(g(2), g(1, 1))
        assert is_coprime(g(2, 1), g(2, -1))

    def test_against_bruteforce_divisor_scan(self):
        rng = Random(5)
        for _ in range(40):
            a = g(rng.randint(-9, 9), rng.randint(-9, 9))
            b = g(rng.randint(-9, 9), rng.randint(-9, 9))
            if not a or not b:
                continue
            d = gcd(a, b)
            assert divides(d, a) and divides(d, b)
            for c in _common_divisors_bruteforce(a, b):
                assert divides(c, d)

    def test_xgcd_identity(self):
        rng = Random(6)
        for _ in range(200):
            a = g(rng.randint(-50, 50), rng.randint(-50, 50))
            b = g(rng.randint(-50, 50), rng.randint(-50, 50))
            if not a and not b:
                continue
            gg, x, y = xgcd(a, b)
            assert a * x + b * y == gg
            if a and b:
                assert canonical(gg) == gcd(a, b)


class TestFactor:
    def test_factor_two(self):
        f = factor(g(2))
        assert f.unit == g(0, -1)
        assert f.factors == ((g(1, 1), 2),)
        assert f.value() == g(2)

    def test_factor_five(self):
        f = factor(g(5))
        assert f.factors == ((g(1, 2), 1), (g(2, 1), 1))
        assert f.value() == g(5)

    def test_canonical_prime_is_its_own_factorization(self):
        for p in (g(1, 1), g(2, 1), g(3), g(7), g(4, 1)):
            f = factor(p)
            assert f.unit == ONE
            assert f.factors == ((p, 1),)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            factor(ZERO)

    def test_reconstruction_all_small_norms(self):
        # every canonical value of norm <= 10^4, and a unit-rotated sample
        from fordspheres.arith import canonical_cells

        rex, imy, _ = canonical_cells(10_000)
        rng = Random(9)
        for x, y in zip(rex, imy):
            q = g(int(x), int(y))
            f = factor(q)
            assert f.value() == q
            assert all(a >= 1 for _, a in f.factors)
            assert all(is_canonical(p) for p, _ in f.factors)
            if rng.random() < 0.02:
                u = UNITS[rng.randrange(4)]
                assert factor(u * q).value() == u * q

    def test_two_squares_large_prime(self):
        p = 1_000_033  # 1 mod 4, above the direct-search cutoff
        a, b = two_squares_prime(p)
        assert a * a + b * b == p


class TestTextGrammar:
    def test_format_examples(self):
        assert format_gint(g(3, 2)) == "3+2i"
        assert format_gint(g(-1, 0)) == "-1"
        assert format_gint(g(0, 1)) == "i"
        assert format_gint(g(0, -1)) == "-i"
        assert format_gint(g(3, -2)) == "3-2i"
        assert format_gint(ZERO) == "0"
        assert format_gint(g(2, 1)) == "2+i"

    def test_parse_examples(self):
        assert parse_gint("3+2i") == g(3, 2)
        assert parse_gint("-17") == g(-17)
        assert parse_gint("i") == I
        assert parse_gint("-i") == g(0, -1)
        assert parse_gint("4i") == g(0, 4)
        assert parse_gint("1-3i") == g(1, -3)
        assert parse_gint(" 2+i ") == g(2, 1)

    def test_roundtrip(self):
        rng = Random(3)
        for _ in range(300):
            q = g(rng.randint(-999, 999), rng.randint(-999, 999))
            assert parse_gint(format_gint(q)) == q

    def test_rejects_garbage(self):
        for text in ("", "1+", "i2", "++i", "abc", "2+3j", "1 + 2"):
            with pytest.raises(ParseError):
                parse_gint(text)
