import cmath
import math
import random
from fractions import Fraction

import pytest

from eiskron.cyclotomic import CycNum, LevelMismatchError, zeta_pow
from eiskron.qseries import (QExpansion, convolve_int, convolve_naive,
                             from_int_form, int_form_is_zero,
                             linear_combination, to_int_form)


def one(N):
    return CycNum.from_rat(N, 1)


def q_power(N, T, n, c=1):
    return QExpansion(N, T, {n: CycNum.from_rat(N, c)})


class TestAdd:
    def test_constant_cancels(self):
        f = QExpansion(2, 10, {0: one(2), 1: one(2)})  # 1 + q^{1/2}
        g = QExpansion.constant(2, 10, -1)
        s = f + g
        assert s.order == 10
        assert s.coeffs == {1: one(2)}

    def test_zero_identity(self):
        f = QExpansion(3, 8, {0: one(3), 5: zeta_pow(3, 2)})
        assert (f + QExpansion.zero(3, 8)).coeffs == f.coeffs

    def test_order_truncation(self):
        f = QExpansion(2, 10, {7: one(2)})
        g = QExpansion(2, 6, {2: one(2)})
        s = f + g
        assert s.order == 6
        assert s.coeffs == {2: one(2)}  # the q^{7/2} term is beyond order 6

    def test_level_mismatch(self):
        with pytest.raises(LevelMismatchError):
            QExpansion.zero(2, 5) + QExpansion.zero(3, 5)


class TestMul:
    def test_difference_of_squares(self):
        f = QExpansion(2, 10, {0: one(2), 1: one(2)})
        g = QExpansion(2, 10, {0: one(2), 1: -one(2)})
        p = f * g
        assert p.coeffs == {0: one(2), 2: -one(2)}  # 1 - q

    def test_one_identity(self):
        f = QExpansion(3, 12, {1: zeta_pow(3, 1), 7: CycNum.from_rat(3, Fraction(2, 5))})
        assert (f * QExpansion.constant(3, 12, 1)).coeffs == f.coeffs

    def test_geometric_square(self):
        # (sum_{n<T} q^{n/N})^2 has coefficient m+1 at q^{m/N}
        N, T = 3, 25
        f = QExpansion(N, T, {n: one(N) for n in range(T)})
        p = f * f
        for m in range(T):
            assert p.coeffs[m] == CycNum.from_rat(N, m + 1)

    def test_order_is_min(self):
        f = QExpansion(2, 10, {0: one(2)})
        g = QExpansion(2, 7, {0: one(2)})
        assert (f * g).order == 7


class TestScaleAndSubstitutions:
    def test_scale_zero(self):
        f = QExpansion(2, 5, {0: one(2), 3: one(2)})
        assert f.scale(0).coeffs == {}

    def test_scale_minus_one_twice(self):
        f = QExpansion(4, 5, {2: zeta_pow(4, 3)})
        assert f.scale(-1).scale(-1).coeffs == f.coeffs

    def test_scale_by_root_of_unity(self):
        f = QExpansion(3, 6, {0: one(3), 1: one(3)})
        g = f.scale(zeta_pow(3, 1))
        assert g.coeffs == {0: zeta_pow(3, 1), 1: zeta_pow(3, 1)}

    def test_rescale_identity(self):
        f = QExpansion(2, 10, {3: one(2)})
        assert f.rescale_exponents(1).coeffs == f.coeffs

    def test_rescale_doubles_exponent(self):
        f = q_power(2, 10, 1)  # q^{1/2}
        g = f.rescale_exponents(2)
        assert g.coeffs == {2: one(2)} and g.order == 20

    def test_rescale_order_scaling(self):
        assert QExpansion.zero(5, 10).rescale_exponents(3).order == 30

    def test_twist_zero(self):
        f = QExpansion(4, 6, {1: one(4), 3: zeta_pow(4, 2)})
        assert f.twist(0).coeffs == f.coeffs

    def test_twist_full_period(self):
        f = QExpansion(4, 6, {1: one(4), 3: zeta_pow(4, 2)})
        assert f.twist(4).field_equals(f)

    def test_twist_single_term(self):
        f = q_power(4, 6, 1)  # q^{1/4}
        assert f.twist(1).coeffs == {1: zeta_pow(4, 1)}

    def test_twist_is_homomorphism(self):
        # substitution tau -> tau + j commutes with multiplication
        rng = random.Random(5)
        for N in (2, 3, 4):
            f = QExpansion(N, 15, {n: CycNum(N, [rng.randint(-2, 2) for _ in range(N)])
                                   for n in range(0, 15, 2)})
            g = QExpansion(N, 15, {n: CycNum(N, [rng.randint(-2, 2) for _ in range(N)])
                                   for n in range(1, 15, 3)})
            for j in range(N):
                assert (f * g).twist(j).field_equals(f.twist(j) * g.twist(j))


class TestIsZero:
    def test_hidden_zero_coefficient(self):
        c = CycNum(3, [1, 1, 1])  # zero in the field, nonzero as a vector
        f = QExpansion(3, 5, {2: c})
        assert f.is_zero()
        assert f.first_nonzero_exponent() is None

    def test_empty(self):
        assert QExpansion.zero(4, 3).is_zero()

    def test_constant_one(self):
        assert not QExpansion.constant(4, 3, 1).is_zero()
        assert QExpansion.constant(4, 3, 1).first_nonzero_exponent() == 0


class TestEvalNumeric:
    def test_constant(self):
        assert QExpansion.constant(3, 5, 1).eval_numeric(1j) == 1

    def test_q_at_i(self):
        f = q_power(1, 5, 1)
        assert abs(f.eval_numeric(1j) - math.exp(-2 * math.pi)) < 1e-12

    def test_zero_series(self):
        assert QExpansion.zero(2, 5).eval_numeric(0.3 + 1.1j) == 0

    def test_lower_half_plane_rejected(self):
        with pytest.raises(ValueError):
            QExpansion.constant(2, 5, 1).eval_numeric(1 - 1j)

    def test_ring_homomorphism_up_to_truncation(self):
        # |eval(f*g) - eval(f)eval(g)| is bounded by the truncated tail
        rng = random.Random(9)
        tau = 0.25 + 1.3j
        for N in (2, 4):
            T = 40
            f = QExpansion(N, T, {n: CycNum(N, [rng.randint(-3, 3) for _ in range(N)])
                                  for n in range(0, T, 3)})
            g = QExpansion(N, T, {n: CycNum(N, [rng.randint(-3, 3) for _ in range(N)])
                                  for n in range(0, T, 2)})
            lhs = (f * g).eval_numeric(tau)
            rhs = f.eval_numeric(tau) * g.eval_numeric(tau)
            assert abs(lhs - rhs) < 1e-8


class TestJson:
    def test_round_trip(self):
        f = QExpansion(4, 9, {0: CycNum(4, [Fraction(1, 3), 0, -2, Fraction(7, 5)]),
                              5: zeta_pow(4, 1)})
        g = QExpansion.from_json(f.to_json())
        assert g.level == f.level and g.order == f.order and g.coeffs == f.coeffs

    def test_schema_shape(self):
        f = q_power(2, 4, 1, Fraction(-3, 7))
        d = f.to_json_dict()
        assert d["level"] == 2 and d["order"] == 4
        assert d["coeffs"] == [{"n": 1, "c": [[-3, 7], [0, 1]]}]

    def test_big_integers_as_strings(self):
        big = 10 ** 30
        f = QExpansion(2, 3, {1: CycNum.from_rat(2, Fraction(big, big + 1))})
        d = f.to_json_dict()
        num, den = d["coeffs"][0]["c"][0]
        assert isinstance(num, str) and isinstance(den, str)
        assert QExpansion.from_json_dict(d).coeffs == f.coeffs


class TestIntForm:
    def test_round_trip(self):
        f = QExpansion(3, 7, {0: CycNum(3, [Fraction(1, 2), Fraction(-1, 3), 0]),
                              4: zeta_pow(3, 2)})
        den, data = to_int_form(f)
        assert den == 6
        g = from_int_form(3, 7, den, data)
        assert g.coeffs == f.coeffs

    def test_packed_matches_naive(self):
        # the packed big-integer convolution against the schoolbook oracle
        rng = random.Random(42)
        for trial in range(30):
            N = rng.randint(1, 6)
            T = rng.randint(1, 30)
            def rand_series():
                return {n: tuple(rng.randint(-10 ** rng.randint(0, 6),
                                             10 ** rng.randint(0, 6))
                                 for _ in range(N))
                        for n in rng.sample(range(T), rng.randint(0, T))}
            A, B = rand_series(), rand_series()
            assert convolve_int(N, T, A, B) == convolve_naive(N, T, A, B)

    def test_packed_huge_coefficients(self):
        # stress the limb-width selection
        N, T = 4, 12
        A = {n: tuple((-1) ** j * 10 ** 40 + j for j in range(N)) for n in range(T)}
        B = {n: tuple(10 ** 35 - j for j in range(N)) for n in range(0, T, 2)}
        assert convolve_int(N, T, A, B) == convolve_naive(N, T, A, B)

    def test_linear_combination(self):
        N, T = 2, 5
        t1 = (Fraction(1, 2), 3, {0: (6, 0), 2: (0, 3)})
        t2 = (Fraction(-1), 2, {0: (2, 0)})
        D, data = linear_combination(N, T, [t1, t2])
        # value: (1/2)(2 + q*zeta/... ) - 1  -> q-part only
        f = from_int_form(N, T, D, data)
        assert f.coeffs == {2: CycNum(N, [0, Fraction(1, 2)])}

    def test_int_form_is_zero(self):
        N = 3
        assert int_form_is_zero(N, {2: (1, 1, 1)}) is None  # field zero
        assert int_form_is_zero(N, {2: (1, 1, 1), 4: (1, 0, 0)}) == 4
        assert int_form_is_zero(N, {}) is None


def test_exponent_out_of_range_rejected():
    with pytest.raises(ValueError):
        QExpansion(2, 5, {5: one(2)})
    with pytest.raises(ValueError):
        QExpansion(2, 5, {-1: one(2)})
