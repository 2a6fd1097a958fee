"""Truncated series in q^{1/N} with coefficients in Q(zeta_N).

A QExpansion of level N and order T knows every coefficient of q^{n/N}
for 0 <= n < T (absent keys are zero).  All exponents are nonnegative,
so products of two series of orders T1, T2 are fully correct up to
order min(T1, T2).

Multiplication is the performance core of the whole engine.  It runs on
an integer representation (one common denominator per series) and packs
each operand into a single big integer, two-dimensionally: the zeta
exponent occupies a limb within a block of 2N limbs, the q exponent
selects the block.  One big-integer multiply then performs the entire
2-D convolution at C speed; limb width is chosen from a coefficient
bound so that no carries cross limb boundaries.  Negative coefficients
are handled by a positive/negative split (4 multiplies).
"""

from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .cyclotomic import CycNum, LevelMismatchError, reduce_mod_cyclotomic, zeta_pow

Scalar = Union[int, Fraction]

# integer form of a series: common denominator + integer coefficient vectors
IntCoeffs = Dict[int, Tuple[int, ...]]


class QExpansion:
    """Sparse truncated series sum_n c_n q^{n/N}, c_n in Q(zeta_N)."""

    __slots__ = ("level", "order", "coeffs")

    def __init__(self, level: int, order: int, coeffs: Mapping[int, CycNum]):
        if level < 1 or order < 1:
            raise ValueError("level and order must be positive")
        clean: Dict[int, CycNum] = {}
        for n, c in coeffs.items():
            if not 0 <= n < order:
                raise ValueError(f"exponent numerator {n} outside [0, {order})")
            if c.level != level:
                raise LevelMismatchError("coefficient level differs from series level")
            if any(c.coeffs):
                clean[n] = c
        self.level = level
        self.order = order
        self.coeffs = clean

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, level: int, order: int) -> "QExpansion":
        return cls(level, order, {})

    @classmethod
    def constant(cls, level: int, order: int, value: Scalar) -> "QExpansion":
        return cls(level, order, {0: CycNum.from_rat(level, value)})

    def _check(self, other: "QExpansion") -> None:
        if self.level != other.level:
            raise LevelMismatchError(f"levels differ: {self.level} vs {other.level}")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        self._check(other)
        T = min(self.order, other.order)
        out: Dict[int, CycNum] = {}
        for n, c in self.coeffs.items():
            if n < T:
                out[n] = c
        for n, c in other.coeffs.items():
            if n < T:
                out[n] = out[n] + c if n in out else c
        return QExpansion(self.level, T, out)

    def __neg__(self):
        return QExpansion(self.level, self.order, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        self._check(other)
        T = min(self.order, other.order)
        da, A = to_int_form(self, T)
        db, B = to_int_form(other, T)
        C = convolve_int(self.level, T, A, B)
        return from_int_form(self.level, T, da * db, C)

    def scale(self, c: Union[Scalar, CycNum]) -> "QExpansion":
        return QExpansion(self.level, self.order, {n: v * c for n, v in self.coeffs.items()})

    def rescale_exponents(self, M: int) -> "QExpansion":
        """Substitute tau -> M*tau, i.e. q^{n/N} -> q^{nM/N}."""
        if M < 1:
            raise ValueError("M must be >= 1")
        return QExpansion(self.level, self.order * M, {n * M: c for n, c in self.coeffs.items()})

    def twist(self, j: int) -> "QExpansion":
        """Substitute tau -> tau + j: coefficient at q^{n/N} picks up zeta_N^{nj}."""
        return QExpansion(
            self.level, self.order,
            {n: c * zeta_pow(self.level, n * j) for n, c in self.coeffs.items()},
        )

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        """True iff every coefficient is zero in the field Q(zeta_N)."""
        return all(c.is_zero() for c in self.coeffs.values())

    def field_equals(self, other: "QExpansion") -> bool:
        return (self - other).is_zero()

    def first_nonzero_exponent(self) -> Union[int, None]:
        """Smallest n with a field-nonzero coefficient, or None."""
        for n in sorted(self.coeffs):
            if not self.coeffs[n].is_zero():
                return n
        return None

    # -- evaluation and serialization ----------------------------------------

    def eval_numeric(self, tau: complex) -> complex:
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        acc = 0j
        for n, c in self.coeffs.items():
            acc += c.embed() * cmath.exp(2j * math.pi * tau * n / self.level)
        return acc

    def to_json_dict(self) -> dict:
        def enc(v: Fraction):
            num, den = v.numerator, v.denominator
            return [num if -2**63 <= num < 2**63 else str(num),
                    den if den < 2**63 else str(den)]

        return {
            "level": self.level,
            "order": self.order,
            "coeffs": [
                {"n": n, "c": [enc(v) for v in self.coeffs[n].coeffs]}
                for n in sorted(self.coeffs)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "QExpansion":
        level = data["level"]
        coeffs = {}
        for entry in data["coeffs"]:
            vec = [Fraction(int(num) if isinstance(num, str) else num,
                            int(den) if isinstance(den, str) else den)
                   for num, den in entry["c"]]
            coeffs[entry["n"]] = CycNum(level, vec)
        return cls(level, data["order"], coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "QExpansion":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self):
        return f"QExpansion(level={self.level}, order={self.order}, terms={len(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return f"O(q^{{{self.order}/{self.level}}})"
        parts = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            if n == 0:
                parts.append(f"({c})")
            elif n % self.level == 0:
                e = n // self.level
                parts.append(f"({c})*q" + (f"^{e}" if e != 1 else ""))
            else:
                parts.append(f"({c})*q^({n}/{self.level})")
        return " + ".join(parts) + f" + O(q^{{{self.order}/{self.level}}})"


# ---------------------------------------------------------------------------
# Integer form and packed convolution.
# ---------------------------------------------------------------------------

def to_int_form(f: QExpansion, order: Union[int, None] = None) -> Tuple[int, IntCoeffs]:
    """(den, {n: integer vector}) with f's coefficients equal to vector/den."""
    T = f.order if order is None else order
    den = 1
    for n, c in f.coeffs.items():
        if n >= T:
            continue
        for v in c.coeffs:
            den = den * v.denominator // math.gcd(den, v.denominator)
    data: IntCoeffs = {}
    for n, c in f.coeffs.items():
        if n >= T:
            continue
        data[n] = tuple(int(v * den) for v in c.coeffs)
    return den, data


def from_int_form(level: int, order: int, den: int, data: IntCoeffs) -> QExpansion:
    coeffs = {
        n: CycNum(level, [Fraction(v, den) for v in vec])
        for n, vec in data.items()
        if any(vec)
    }
    return QExpansion(level, order, coeffs)


def convolve_int(level: int, order: int, A: IntCoeffs, B: IntCoeffs) -> IntCoeffs:
    """Exact 2-D convolution of integer series, cyclic in the zeta index.

    Keys >= order are dropped from inputs and output.
    """
    A = {n: v for n, v in A.items() if n < order and any(v)}
    B = {n: v for n, v in B.items() if n < order and any(v)}
    if not A or not B:
        return {}
    N = level
    maxa = max(abs(x) for v in A.values() for x in v)
    maxb = max(abs(x) for v in B.values() for x in v)
    bound = order * N * maxa * maxb
    width = (bound.bit_length() + 9) // 8 + 1  # room for sums, no inter-limb carry
    stride = 2 * N
    return _packed_conv(N, order, A, B, width, stride)


def _pack(data: IntCoeffs, positions: int, width: int, stride: int) -> Tuple[int, int]:
    pos = bytearray(positions * width)
    neg = bytearray(positions * width)
    for n, vec in data.items():
        base = n * stride
        for j, v in enumerate(vec):
            if v > 0:
                off = (base + j) * width
                pos[off:off + width] = v.to_bytes(width, "little")
            elif v < 0:
                off = (base + j) * width
                neg[off:off + width] = (-v).to_bytes(width, "little")
    return int.from_bytes(pos, "little"), int.from_bytes(neg, "little")


def _packed_conv(N: int, order: int, A: IntCoeffs, B: IntCoeffs,
                 width: int, stride: int) -> IntCoeffs:
    ap, an = _pack(A, order * stride, width, stride)
    bp, bn = _pack(B, order * stride, width, stride)
    plus = ap * bp + an * bn
    minus = ap * bn + an * bp
    nbytes = 2 * order * stride * width + width
    bplus = plus.to_bytes(nbytes, "little")
    bminus = minus.to_bytes(nbytes, "little")
    out: IntCoeffs = {}
    for n in range(order):
        vec = [0] * N
        base = n * stride
        nonzero = False
        for j in range(stride - 1):
            off = (base + j) * width
            v = (int.from_bytes(bplus[off:off + width], "little")
                 - int.from_bytes(bminus[off:off + width], "little"))
            if v:
                vec[j - N if j >= N else j] += v
                nonzero = True
        if nonzero and any(vec):
            out[n] = tuple(vec)
    return out


def convolve_naive(level: int, order: int, A: IntCoeffs, B: IntCoeffs) -> IntCoeffs:
    """Schoolbook reference convolution; oracle for convolve_int in tests."""
    out: Dict[int, list] = {}
    for n1, v1 in A.items():
        if n1 >= order:
            continue
        for n2, v2 in B.items():
            n = n1 + n2
            if n2 >= order or n >= order:
                continue
            vec = out.setdefault(n, [0] * level)
            for i, a in enumerate(v1):
                if a:
                    for j, b in enumerate(v2):
                        if b:
                            k = i + j
                            if k >= level:
                                k -= level
                            vec[k] += a * b
    return {n: tuple(v) for n, v in out.items() if any(v)}


def linear_combination(level: int, order: int,
                       terms: Sequence[Tuple[Fraction, int, IntCoeffs]]) -> Tuple[int, IntCoeffs]:
    """Integer-form sum_i c_i * (data_i / den_i) over a common denominator.

    Each term is (scalar, den, data).  Returns (D, data) with value data/D.
    """
    D = 1
    for c, den, _ in terms:
        d = den * Fraction(c).denominator
        D = D * d // math.gcd(D, d)
    acc: Dict[int, list] = {}
    for c, den, data in terms:
        c = Fraction(c)
        m = D // (den * c.denominator) * c.numerator
        if m == 0:
            continue
        for n, vec in data.items():
            if n >= order:
                continue
            row = acc.get(n)
            if row is None:
                acc[n] = [m * x for x in vec]
            else:
                for i, x in enumerate(vec):
                    if x:
                        row[i] += m * x
    return D, {n: tuple(v) for n, v in acc.items() if any(v)}


def int_form_is_zero(level: int, data: IntCoeffs) -> Union[int, None]:
    """First key whose vector is nonzero in Q(zeta_N), or None if all vanish."""
    for n in sorted(data):
        if any(reduce_mod_cyclotomic(level, data[n])):
            return n
    return None
