import math
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

import oracles
import planepart as pp
from planepart.arith import BERNOULLI


class TestPrecisionContext:
    def test_rejects_low_digits(self):
        with pytest.raises(ValueError):
            pp.PrecisionContext(decimal_digits=10)

    def test_eps(self):
        ctx = pp.PrecisionContext(decimal_digits=50, guard_digits=20)
        with ctx.workdps():
            assert ctx.eps == mpmath.mpf(10) ** -30

    def test_workdps_scopes_precision(self):
        ctx = pp.PrecisionContext(decimal_digits=120)
        outer = mp.dps
        with ctx.workdps():
            assert mp.dps == 120
        assert mp.dps == outer


class TestConstants:
    def test_zeta_prime_m1_against_euler_maclaurin_oracle(self, ctx50):
        oracle = oracles.em_zeta_prime_m1(50)
        got = pp.constants(ctx50).zeta_prime_m1
        with ctx50.workdps():
            assert abs(got - oracle) < mpmath.mpf(10) ** -45

    def test_a_is_zeta3(self, ctx50):
        cst = pp.constants(ctx50)
        with ctx50.workdps():
            # independent route: direct series with Euler-Maclaurin tail
            tail_start = 200
            s = mp.fsum(mpmath.mpf(1) / n**3 for n in range(1, tail_start))
            s += (mpmath.mpf(1) / (2 * tail_start**2)
                  + mpmath.mpf(1) / (2 * tail_start**3)
                  + mpmath.mpf(1) / (4 * tail_start**4))
            assert abs(cst.a - s) < mpmath.mpf(10) ** -10
            assert abs(mp.exp(cst.log2) - 2) < ctx50.eps

    def test_derived_constants(self, ctx50):
        cst = pp.constants(ctx50)
        der = pp.derived_constants(ctx50)
        with ctx50.workdps():
            # c2^3 = 27 a / 4 exactly to precision
            assert abs(der.c2**3 - 27 * cst.a / 4) < ctx50.eps
            assert mp.nstr(der.c1, 6) == "0.730269"
            assert mp.nstr(der.c2, 6) == "2.00945"


class TestBernoulli:
    def test_first_values(self):
        assert pp.bernoulli_number(0) == 1
        assert pp.bernoulli_number(1) == Fraction(-1, 2)
        assert pp.bernoulli_number(2) == Fraction(1, 6)
        assert pp.bernoulli_number(12) == Fraction(-691, 2730)

    def test_against_recurrence_oracle(self):
        oracle = oracles.bernoulli_by_recurrence(64)
        for n in range(65):
            assert pp.bernoulli_number(n) == oracle[n]

    def test_against_mpmath_spot_checks(self):
        for n in (100, 500, 1000):
            p, q = mpmath.bernfrac(n)
            assert pp.bernoulli_number(n) == Fraction(p, q)

    def test_defining_sum_invariant(self):
        # sum_{j<=n} C(n+1,j) B_j = 0; exhaustive to 240, sampled beyond
        for n in list(range(1, 241)) + [500, 750, 1000]:
            acc = sum(math.comb(n + 1, j) * pp.bernoulli_number(j)
                      for j in range(n + 1))
            assert acc == 0, n

    def test_poly_values(self):
        assert pp.bernoulli_poly(2, 0) == Fraction(1, 6)
        assert pp.bernoulli_poly(3, Fraction(1, 3)) == Fraction(1, 27)
        assert pp.bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)

    def test_poly_row_matches_poly(self):
        row = BERNOULLI.poly_row(3, 7)
        assert row == tuple(pp.bernoulli_poly(3, Fraction(d, 7)) if d < 7
                            else BERNOULLI.poly(3, Fraction(d, 7))
                            for d in range(1, 8))

    def test_poly_domain(self):
        with pytest.raises(ValueError):
            pp.bernoulli_poly(2, Fraction(3, 2))


class TestLnGamma:
    def test_trivial_points(self, ctx50):
        with ctx50.workdps():
            assert pp.lngamma(1, ctx50) == 0
            assert abs(pp.lngamma(0.5, ctx50) - mp.log(mp.sqrt(mp.pi))) < ctx50.eps

    def test_recurrence_chain(self, ctx50):
        # Gamma(10.25) = 9.25 * 8.25 * ... * 1.25 * Gamma(1.25)
        with ctx50.workdps():
            acc = pp.lngamma(mpmath.mpf("1.25"), ctx50)
            x = mpmath.mpf("1.25")
            while x < 10:
                acc += mp.log(x)
                x += 1
            assert abs(pp.lngamma(mpmath.mpf("10.25"), ctx50) - acc) < mpmath.mpf(10) ** -40

    def test_domain(self, ctx50):
        with pytest.raises(ValueError):
            pp.lngamma(-1, ctx50)


class TestSigma2:
    def test_values(self):
        assert pp.sigma2(1) == 1
        assert pp.sigma2(6) == 50
        assert pp.sigma2(12) == 210

    def test_against_enumeration(self):
        for n in range(1, 200):
            assert pp.sigma2(n) == oracles.sigma2_by_enumeration(n)

    def test_table_matches_pointwise(self):
        tab = pp.sigma2_table(300)
        for n in range(1, 301):
            assert tab[n] == pp.sigma2(n)


class TestFarey:
    def test_small(self):
        f1 = pp.farey(1)
        assert [(f.h, f.k) for f in f1] == [(0, 1)]

    def test_counts_by_totient(self):
        for N in (2, 3, 5, 8, 20):
            expected = 1 + sum(oracles.totient(k) - (1 if k == 1 else 0)
                               for k in range(2, N + 1))
            assert len(pp.farey(N)) == expected

    def test_sorted_reduced_in_range(self):
        fs = pp.farey(9)
        assert fs == sorted(fs)
        for f in fs:
            assert math.gcd(f.h, f.k) == 1
            assert 0 <= f.h < f.k <= 9


class TestModInverse:
    def test_values(self):
        assert pp.mod_inverse(3, 7) == 5
        assert pp.mod_inverse(5, 12) == 5
        assert pp.mod_inverse(1, 19) == 1
        assert pp.mod_inverse(0, 1) == 0

    def test_property(self):
        for k in range(2, 40):
            for h in range(1, k):
                if math.gcd(h, k) == 1:
                    assert (h * pp.mod_inverse(h, k)) % k == 1

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError):
            pp.mod_inverse(4, 6)


class TestPrecisionFor:
    def test_spec_points(self):
        assert pp.precision_for(1).decimal_digits == 62
        assert pp.precision_for(750).decimal_digits >= 130
        d6999 = pp.precision_for(6999).decimal_digits
        assert 370 <= d6999 <= 390
        assert d6999 >= 316 + 60

    def test_covers_exact_digit_count(self):
        # enough digits to hold p2(n) exactly plus guard
        table = pp.p2_exact_table(400)
        for n in (50, 200, 400):
            assert pp.precision_for(n).decimal_digits >= len(str(table[n])) + 30
