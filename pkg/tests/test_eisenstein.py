from fractions import Fraction

import pytest

from eiskron.cyclotomic import CycNum, zeta_pow
from eiskron.eisenstein import (EisensteinIndex, InvalidIndexError,
                                bernoulli_number, bernoulli_poly_eval,
                                bg_tilde_s, constant_term, eisenstein_qexp)
from eiskron.qseries import QExpansion


def bernoulli_akiyama_tanigawa(n: int) -> Fraction:
    """Independent oracle: Akiyama-Tanigawa algorithm (yields B_1 = +1/2)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return -a[0] if n == 1 else a[0]


def sigma(r: int, n: int) -> int:
    return sum(d ** r for d in range(1, n + 1) if n % d == 0)


class TestBernoulli:
    def test_first_values(self):
        assert bernoulli_number(0) == 1
        assert bernoulli_number(1) == Fraction(-1, 2)
        assert bernoulli_number(4) == Fraction(-1, 30)

    def test_odd_vanish(self):
        for m in (3, 5, 7, 9, 11):
            assert bernoulli_number(m) == 0

    @pytest.mark.parametrize("m", range(0, 21))
    def test_against_akiyama_tanigawa(self, m):
        assert bernoulli_number(m) == bernoulli_akiyama_tanigawa(m)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bernoulli_number(-1)


class TestBernoulliPoly:
    def test_b2(self):
        # B_2(t) = t^2 - t + 1/6
        assert bernoulli_poly_eval(2, 0) == Fraction(1, 6)
        assert bernoulli_poly_eval(2, Fraction(1, 2)) == Fraction(-1, 12)

    def test_b1_symmetry(self):
        assert bernoulli_poly_eval(1, Fraction(1, 2)) == 0

    def test_value_at_zero_is_bernoulli_number(self):
        for m in range(12):
            assert bernoulli_poly_eval(m, 0) == bernoulli_number(m)

    def test_difference_equation(self):
        # B_m(t+1) - B_m(t) = m t^{m-1}
        for m in range(1, 10):
            for t in (Fraction(1, 3), Fraction(-2, 7), Fraction(5)):
                assert (bernoulli_poly_eval(m, t + 1) - bernoulli_poly_eval(m, t)
                        == m * t ** (m - 1))


class TestIndex:
    def test_canonicalization(self):
        idx = EisensteinIndex(3, 4, -1, 7)
        assert (idx.a1, idx.a2) == (3, 3)

    def test_weight_two_zero_excluded(self):
        with pytest.raises(InvalidIndexError):
            EisensteinIndex(2, 4, 0, 0)
        with pytest.raises(InvalidIndexError):
            EisensteinIndex(2, 4, 4, 8)  # reduces to (0, 0)

    def test_weight_two_nonzero_allowed(self):
        EisensteinIndex(2, 4, 0, 1)

    def test_bad_weight_or_level(self):
        with pytest.raises(ValueError):
            EisensteinIndex(0, 3, 1, 0)
        with pytest.raises(ValueError):
            EisensteinIndex(3, 0, 1, 0)


class TestConstantTerm:
    def test_level_one_weight_four(self):
        c = constant_term(EisensteinIndex(4, 1, 0, 0))
        assert c.coeffs == (Fraction(-1, 120),)

    def test_weight_one_pure_character(self):
        # -(1/2)(1+i)/(1-i) = -i/2
        c = constant_term(EisensteinIndex(1, 4, 0, 1))
        assert c == zeta_pow(4, 1) * Fraction(-1, 2)
        assert abs(c.embed() - (-0.5j)) < 1e-12

    def test_weight_one_generic(self):
        c = constant_term(EisensteinIndex(1, 5, 2, 3))
        assert c == CycNum.from_rat(5, Fraction(-1, 10))

    def test_weight_one_zero_parameter(self):
        assert constant_term(EisensteinIndex(1, 2, 0, 0)).is_zero()

    @pytest.mark.parametrize("N,a2", [(3, 1), (5, 2), (8, 5)])
    def test_pure_character_against_complex_arithmetic(self, N, a2):
        import cmath
        c = constant_term(EisensteinIndex(1, N, 0, a2))
        z = cmath.exp(2j * cmath.pi * a2 / N)
        assert abs(c.embed() - (-0.5 * (1 + z) / (1 - z))) < 1e-12


class TestQExpansion:
    def test_level_one_weight_four_divisor_sums(self):
        f = eisenstein_qexp(EisensteinIndex(4, 1, 0, 0), 8)
        for n in range(1, 8):
            assert f.coeffs[n] == CycNum.from_rat(1, -2 * sigma(3, n))

    def test_level_one_even_weights_divisor_sums(self):
        for k in (6, 8):
            f = eisenstein_qexp(EisensteinIndex(k, 1, 0, 0), 12)
            for n in range(1, 12):
                assert f.coeffs[n] == CycNum.from_rat(1, -2 * sigma(k - 1, n))

    def test_half_integral_series_vanishes(self):
        # weight 1, a = (1, 0) at level 2: the two branches cancel termwise
        # and the constant term is {1/2} - 1/2 = 0, so the series is 0
        # (consistent with parity: -a = a mod 2 forces E = -E)
        f = eisenstein_qexp(EisensteinIndex(1, 2, 1, 0), 20)
        assert f.is_zero()

    def test_fractional_exponents_against_double_sum(self):
        # independent double-sum oracle for k=3, N=4, a=(1, 0):
        # nu runs over 1/4 + Z (> 0) and over 3/4 + Z (> 0), both with sign -1
        # since (-1)^{k+1} = 1 ... careful: signs are -1 and +(-1)^{k+1} = +1
        import collections
        N, T = 4, 24
        f = eisenstein_qexp(EisensteinIndex(3, N, 1, 0), T)
        acc = collections.defaultdict(Fraction)
        for m in range(1, T):  # nu = m/4
            for mu in range(1, T):
                n = mu * m
                if n >= T:
                    break
                nu = Fraction(m, N)
                if m % N == 1:
                    acc[n] += -(nu ** 2)
                if m % N == 3:
                    acc[n] += nu ** 2  # mirrored branch, sign (-1)^{k+1} = +1
        for n in range(1, T):
            expect = CycNum.from_rat(N, acc.get(n, Fraction(0)))
            assert f.coeffs.get(n, CycNum.zero(N)) == expect

    def test_character_coefficients(self):
        # independent double-sum oracle for k=2, N=3, a=(0, 1): integer nu,
        # characters zeta^{mu} and zeta^{-mu}, both branches carrying sign -1
        import collections
        f = eisenstein_qexp(EisensteinIndex(2, 3, 0, 1), 10)
        acc = collections.defaultdict(lambda: [Fraction(0)] * 3)
        for nu in range(1, 11):
            for mu in range(1, 11):
                n = 3 * mu * nu  # exponent numerator of q^{mu nu}
                if n < 10:
                    acc[n][mu % 3] += -Fraction(nu)
                    acc[n][(-mu) % 3] += -Fraction(nu)  # (-1)^{k+1} = -1 at k=2
        for n in range(1, 10):
            expect = CycNum(3, acc[n]) if n in acc else CycNum.zero(3)
            assert f.coeffs.get(n, CycNum.zero(3)) == expect

    def test_parity(self):
        for (k, N, a) in [(1, 5, (2, 3)), (2, 3, (1, 0)), (3, 4, (1, 2)),
                          (4, 2, (0, 1)), (5, 6, (5, 1))]:
            f = eisenstein_qexp(EisensteinIndex(k, N, a[0], a[1]), 30)
            g = eisenstein_qexp(EisensteinIndex(k, N, -a[0], -a[1]), 30)
            assert g.field_equals(f.scale(Fraction((-1) ** k)))

    def test_translation_modularity(self):
        # E_x(tau+1) = E_{(x1, x1+x2)}(tau), as a twist identity
        for (k, N, a) in [(2, 3, (1, 1)), (3, 4, (2, 3)), (1, 5, (1, 0))]:
            f = eisenstein_qexp(EisensteinIndex(k, N, a[0], a[1]), 30)
            g = eisenstein_qexp(EisensteinIndex(k, N, a[0], a[0] + a[1]), 30)
            assert f.twist(1).field_equals(g)

    def test_level_lift_invariance(self):
        # the same function expanded at level N and at level M*N agrees
        k, N, M, T = 3, 3, 2, 12
        f = eisenstein_qexp(EisensteinIndex(k, N, 1, 2), T)
        g = eisenstein_qexp(EisensteinIndex(k, M * N, M, 2 * M), M * T)

        def lift(c: CycNum) -> CycNum:
            vec = [Fraction(0)] * (M * N)
            for j, v in enumerate(c.coeffs):
                vec[M * j] += v
            return CycNum(M * N, vec)

        lifted = QExpansion(M * N, M * T,
                            {M * n: lift(c) for n, c in f.coeffs.items()})
        assert lifted.field_equals(g)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            eisenstein_qexp(EisensteinIndex(3, 2, 1, 0), 0)


class TestBgTildeS:
    def test_weight_one_level_two_vanishes(self):
        assert bg_tilde_s(1, 2, 1, 10).is_zero()

    def test_integer_exponents(self):
        f = bg_tilde_s(3, 3, 1, 10)
        assert all(n % 3 == 0 for n in f.coeffs)

    def test_weight_three_constant(self):
        # -N^{k-1} B_k(a/N)/k = -9 * B_3(1/3)/3 = -9 * (1/27)/3 = -1/9
        f = bg_tilde_s(3, 3, 1, 10)
        assert f.coeffs[0] == CycNum.from_rat(3, Fraction(-1, 9))

    def test_matches_rescaled_series(self):
        k, N, a, T = 2, 4, 1, 8
        f = bg_tilde_s(k, N, a, T)
        g = eisenstein_qexp(EisensteinIndex(k, N, a, 0), T)
        assert f.field_equals(g.rescale_exponents(N).scale(-Fraction(N) ** (k - 1)))
