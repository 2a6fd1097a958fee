"""Exact q-expansions of the level-N Eisenstein series of weight k.

The expansion of the series attached to a torsion parameter (a1, a2)
mod N has constant term given by Bernoulli polynomial values (with a
three-way case split at weight 1) and, for each pair (mu, nu) with
mu >= 1, nu in +-a1/N + Z, nu > 0, a term

    -+ zeta_N^{+-mu*a2} * nu^{k-1} * q^{mu*nu},

the mirrored branch carrying an extra sign (-1)^{k+1}.  All exponents
are multiples of 1/N, all coefficients live in Q(zeta_N).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List

from .cyclotomic import CycNum, Rat, zeta_pow
from .qseries import QExpansion


class InvalidIndexError(ValueError):
    """Weight-2 series with zero parameter: modular but not holomorphic."""


class EisensteinIndex:
    """Identifies one series: weight k, level N, parameter (a1, a2) mod N."""

    __slots__ = ("k", "N", "a1", "a2")

    def __init__(self, k: int, N: int, a1: int, a2: int):
        if k < 1:
            raise ValueError("weight must be >= 1")
        if N < 1:
            raise ValueError("level must be >= 1")
        a1 %= N
        a2 %= N
        if k == 2 and a1 == 0 and a2 == 0:
            raise InvalidIndexError(
                "non-holomorphic series E^(2)_{(0,0)} excluded")
        self.k = k
        self.N = N
        self.a1 = a1
        self.a2 = a2

    def __eq__(self, other):
        return (isinstance(other, EisensteinIndex)
                and (self.k, self.N, self.a1, self.a2) == (other.k, other.N, other.a1, other.a2))

    def __hash__(self):
        return hash((self.k, self.N, self.a1, self.a2))

    def __repr__(self):
        return f"EisensteinIndex(k={self.k}, N={self.N}, a=({self.a1},{self.a2}))"


@lru_cache(maxsize=None)
def _bernoulli_upto(m: int) -> tuple:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1 (first convention, B_1 = -1/2)
    vals: List[Fraction] = [Fraction(1)]
    for n in range(1, m + 1):
        s = sum(Fraction(comb(n + 1, j)) * vals[j] for j in range(n))
        vals.append(-s / (n + 1))
    return tuple(vals)


def bernoulli_number(m: int) -> Rat:
    """Exact Bernoulli number B_m, convention B_1 = -1/2."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return _bernoulli_upto(m)[m]


def bernoulli_poly_eval(m: int, t: Rat) -> Rat:
    """Exact value of the Bernoulli polynomial B_m(t)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    B = _bernoulli_upto(m)
    t = Fraction(t)
    acc = Fraction(0)
    pw = Fraction(1)
    for j in range(m, -1, -1):
        acc += comb(m, j) * B[j] * pw
        pw *= t
    return acc


def constant_term(idx: EisensteinIndex) -> CycNum:
    """Coefficient of q^0, per the weight-1 case split / Bernoulli values."""
    N, k, a1, a2 = idx.N, idx.k, idx.a1, idx.a2
    if k >= 2:
        return CycNum.from_rat(N, bernoulli_poly_eval(k, Fraction(a1, N)) / k)
    if a1 == 0 and a2 == 0:
        return CycNum.zero(N)
    if a1 == 0:
        # -(1/2) (1 + zeta^{a2}) / (1 - zeta^{a2}), exact division in Q(zeta_N)
        z = zeta_pow(N, a2)
        one = CycNum.from_rat(N, 1)
        return (one + z) * (one - z).inverse() * Fraction(-1, 2)
    return CycNum.from_rat(N, Fraction(a1, N) - Fraction(1, 2))


@lru_cache(maxsize=None)
def _qexp_cached(k: int, N: int, a1: int, a2: int, order: int) -> QExpansion:
    acc: Dict[int, list] = {}

    def add(n: int, zexp: int, value: Fraction) -> None:
        vec = acc.setdefault(n, [Fraction(0)] * N)
        vec[zexp % N] += value

    c0 = constant_term(EisensteinIndex(k, N, a1, a2))
    for j, v in enumerate(c0.coeffs):
        if v:
            add(0, j, v)

    # branch over nu in a1/N + Z (sign -1) and nu in -a1/N + Z (sign (-1)^{k+1})
    for start, chsign, sign in (
        (a1 if a1 else N, +1, -1),
        ((N - a1) if a1 else N, -1, Fraction((-1) ** (k + 1))),
    ):
        for m in range(start, order, N):
            pw = Fraction(m, N) ** (k - 1)
            val = sign * pw
            for mu in range(1, (order - 1) // m + 1):
                add(mu * m, chsign * mu * a2, val)

    coeffs = {n: CycNum(N, vec) for n, vec in acc.items() if any(vec)}
    return QExpansion(N, order, coeffs)


def eisenstein_qexp(idx: EisensteinIndex, order: int) -> QExpansion:
    """Exact expansion of the series at idx, all exponents n/N with n < order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return _qexp_cached(idx.k, idx.N, idx.a1, idx.a2, order)


def bg_tilde_s(k: int, N: int, a: int, order: int) -> QExpansion:
    """The Gamma_1(N) variant: -N^{k-1} times the (a,0)-series at N*tau.

    The rescaling tau -> N*tau turns every exponent into an integer power
    of q; the result has order N*order.
    """
    idx = EisensteinIndex(k, N, a, 0)
    f = eisenstein_qexp(idx, order)
    return f.rescale_exponents(N).scale(-Fraction(N) ** (k - 1))
