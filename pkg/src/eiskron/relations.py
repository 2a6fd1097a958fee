"""The bracket calculus and exact verification of the 3-term relations.

A weight-k instance combines three pairwise products of Eisenstein
series (weighted by the polynomials P, Q, R) against a linear
combination of single series (weighted by alpha, beta, gamma).  The
residual is a q-expansion that must be zero in Q(zeta_N) at every
truncation order.

The verification scan works on the integer form of the series
(common-denominator vectors, see qseries): products of expansions are
cached per (weight, parameter) pair and the residual is assembled as a
single integer linear combination, so the hot loop never touches
Fraction arithmetic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .cyclotomic import Rat
from .eisenstein import EisensteinIndex, eisenstein_qexp
from .qseries import (IntCoeffs, QExpansion, convolve_int, from_int_form,
                      int_form_is_zero, linear_combination, to_int_form)

Pair = Tuple[int, int]


# ---------------------------------------------------------------------------
# Homogeneous bivariate polynomials over Q.
# ---------------------------------------------------------------------------

class HomPoly:
    """Homogeneous polynomial sum_i coeffs[i] X^i Y^{degree-i} over Q."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Sequence[Rat]):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("need degree+1 coefficients")
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def monomial(cls, k1: int, k2: int) -> "HomPoly":
        c = [Fraction(0)] * (k1 + k2 + 1)
        c[k1] = Fraction(1)
        return cls(k1 + k2, c)

    def eval(self, x: Rat, y: Rat) -> Rat:
        x, y = Fraction(x), Fraction(y)
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c:
                acc += c * x ** i * y ** (self.degree - i)
        return acc

    def deriv_x(self) -> "HomPoly":
        if self.degree == 0:
            return HomPoly.zero(0)
        return HomPoly(self.degree - 1,
                       [i * self.coeffs[i] for i in range(1, self.degree + 1)])

    def deriv_y(self) -> "HomPoly":
        if self.degree == 0:
            return HomPoly.zero(0)
        return HomPoly(self.degree - 1,
                       [(self.degree - i) * self.coeffs[i] for i in range(self.degree)])

    def scale(self, c: Rat) -> "HomPoly":
        return HomPoly(self.degree, [v * c for v in self.coeffs])

    def __add__(self, other: "HomPoly") -> "HomPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return HomPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + other.scale(Fraction(-1))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.degree == other.degree:
            return self.coeffs == other.coeffs
        # zero polynomials of different degrees are still equal
        return self.is_zero() and other.is_zero()

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"HomPoly({self.degree}, {list(self.coeffs)})"


def poly_P(k1: int, k2: int) -> HomPoly:
    """X^{k1} Y^{k2}."""
    _check_split(k1, k2)
    return HomPoly.monomial(k1, k2)


def poly_Q(k1: int, k2: int) -> HomPoly:
    """(-X-Y)^{k1} X^{k2}, expanded."""
    _check_split(k1, k2)
    coeffs = [Fraction(0)] * (k1 + k2 + 1)
    sign = (-1) ** k1
    for t in range(k1 + 1):
        coeffs[t + k2] += sign * comb(k1, t)
    return HomPoly(k1 + k2, coeffs)


def poly_R(k1: int, k2: int) -> HomPoly:
    """Y^{k1} (-X-Y)^{k2}, expanded."""
    _check_split(k1, k2)
    coeffs = [Fraction(0)] * (k1 + k2 + 1)
    sign = (-1) ** k2
    for t in range(k2 + 1):
        coeffs[t] += sign * comb(k2, t)
    return HomPoly(k1 + k2, coeffs)


def _check_split(k1: int, k2: int) -> None:
    if k1 < 0 or k2 < 0:
        raise ValueError("indices must be >= 0")


def coeff_alpha(k1: int, k2: int) -> Rat:
    """(-1)^{k2+1}/(k2+1); zero if an index is -1."""
    if k1 < 0 or k2 < 0:
        return Fraction(0)
    return Fraction((-1) ** (k2 + 1), k2 + 1)


def coeff_beta(k1: int, k2: int) -> Rat:
    """(-1)^{k1+1}/(k1+1); zero if an index is -1."""
    if k1 < 0 or k2 < 0:
        return Fraction(0)
    return Fraction((-1) ** (k1 + 1), k1 + 1)


def coeff_gamma(k1: int, k2: int) -> Rat:
    """(-1)^{k1+k2+1} k1! k2! / (k1+k2+1)!; zero if an index is -1."""
    if k1 < 0 or k2 < 0:
        return Fraction(0)
    return Fraction((-1) ** (k1 + k2 + 1) * factorial(k1) * factorial(k2),
                    factorial(k1 + k2 + 1))


# ---------------------------------------------------------------------------
# Relation instances.
# ---------------------------------------------------------------------------

class InvalidInstanceError(ValueError):
    """Instance violates the hypotheses (zero parameter or bad split)."""


class RelationInstance:
    """One instantiation (N; k; k1,k2; a, b, c) with a+b+c = 0, all nonzero."""

    __slots__ = ("N", "k", "k1", "k2", "a", "b", "c")

    def __init__(self, N: int, k: int, k1: int, k2: int, a: Pair, b: Pair,
                 c: Optional[Pair] = None):
        if N < 1:
            raise ValueError("level must be >= 1")
        if k < 2 or k1 < 0 or k2 < 0 or k1 + k2 != k - 2:
            raise InvalidInstanceError(f"bad split ({k1},{k2}) for weight {k}")
        a = (a[0] % N, a[1] % N)
        b = (b[0] % N, b[1] % N)
        c_expected = ((-a[0] - b[0]) % N, (-a[1] - b[1]) % N)
        if c is None:
            c = c_expected
        else:
            c = (c[0] % N, c[1] % N)
            if c != c_expected:
                raise InvalidInstanceError("a + b + c != 0")
        for name, v in (("a", a), ("b", b), ("c", c)):
            if v == (0, 0):
                raise InvalidInstanceError(f"parameter {name} is zero")
        self.N, self.k, self.k1, self.k2 = N, k, k1, k2
        self.a, self.b, self.c = a, b, c

    def as_dict(self) -> dict:
        return {"level": self.N, "weight": self.k, "split": [self.k1, self.k2],
                "a": list(self.a), "b": list(self.b), "c": list(self.c)}

    def __repr__(self):
        return (f"RelationInstance(N={self.N}, k={self.k}, split=({self.k1},{self.k2}), "
                f"a={self.a}, b={self.b}, c={self.c})")

    def __eq__(self, other):
        return (isinstance(other, RelationInstance)
                and (self.N, self.k, self.k1, self.k2, self.a, self.b, self.c)
                == (other.N, other.k, other.k1, other.k2, other.a, other.b, other.c))

    def __hash__(self):
        return hash((self.N, self.k, self.k1, self.k2, self.a, self.b, self.c))


def enumerate_instances(N: int, k_max: int) -> Iterator[RelationInstance]:
    """All (k, split, ordered nonzero triple) instances for 2 <= k <= k_max."""
    nonzero = [(i, j) for i in range(N) for j in range(N) if (i, j) != (0, 0)]
    for k in range(2, k_max + 1):
        for k1 in range(k - 1):
            k2 = k - 2 - k1
            for a in nonzero:
                for b in nonzero:
                    if ((a[0] + b[0]) % N, (a[1] + b[1]) % N) == (0, 0):
                        continue
                    yield RelationInstance(N, k, k1, k2, a, b)


# ---------------------------------------------------------------------------
# Integer-form caches for the hot path.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _eis_int(k: int, N: int, a1: int, a2: int, order: int):
    f = eisenstein_qexp(EisensteinIndex(k, N, a1, a2), order)
    return to_int_form(f)


@lru_cache(maxsize=None)
def _prod_int(i: int, a: Pair, j: int, b: Pair, N: int, order: int):
    if (j, b) < (i, a):  # the product is commutative; canonicalize the key
        i, a, j, b = j, b, i, a
    da, A = _eis_int(i, N, a[0], a[1], order)
    db, B = _eis_int(j, N, b[0], b[1], order)
    return da * db, convolve_int(N, order, A, B)


def _residual_int(inst: RelationInstance, order: int,
                  alpha: Rat, beta: Rat, gamma: Rat,
                  P: HomPoly, Q: HomPoly, R: HomPoly) -> Tuple[int, IntCoeffs]:
    N = inst.N
    terms: List[Tuple[Fraction, int, IntCoeffs]] = []
    for poly, u, v in ((P, inst.a, inst.b), (Q, inst.b, inst.c), (R, inst.c, inst.a)):
        ell = poly.degree
        for i, coef in enumerate(poly.coeffs):
            if coef:
                den, data = _prod_int(i + 1, u, ell - i + 1, v, N, order)
                terms.append((coef, den, data))
    for coef, point in ((alpha, inst.a), (beta, inst.b), (gamma, inst.c)):
        if coef:
            den, data = _eis_int(inst.k, N, point[0], point[1], order)
            terms.append((-Fraction(coef), den, data))
    return linear_combination(N, order, terms)


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------

def bracket(P: HomPoly, a: Pair, b: Pair, N: int, order: int) -> QExpansion:
    """Linear extension of X^{k1}Y^{k2}[a, b] = E^{(k1+1)}_a E^{(k2+1)}_b."""
    ell = P.degree
    terms: List[Tuple[Fraction, int, IntCoeffs]] = []
    for i, coef in enumerate(P.coeffs):
        if coef:
            den, data = _prod_int(i + 1, (a[0] % N, a[1] % N),
                                  ell - i + 1, (b[0] % N, b[1] % N), N, order)
            terms.append((coef, den, data))
    den, data = linear_combination(N, order, terms)
    return from_int_form(N, order, den, data)


def relation_residual(inst: RelationInstance, order: int, *,
                      alpha: Optional[Rat] = None, beta: Optional[Rat] = None,
                      gamma: Optional[Rat] = None, P: Optional[HomPoly] = None,
                      Q: Optional[HomPoly] = None, R: Optional[HomPoly] = None
                      ) -> QExpansion:
    """LHS minus RHS of the 3-term relation, as an exact q-expansion.

    The keyword overrides substitute custom weights/polynomials for the
    canonical ones; they exist for mutation testing.
    """
    k1, k2 = inst.k1, inst.k2
    den, data = _residual_int(
        inst, order,
        coeff_alpha(k1, k2) if alpha is None else alpha,
        coeff_beta(k1, k2) if beta is None else beta,
        coeff_gamma(k1, k2) if gamma is None else gamma,
        poly_P(k1, k2) if P is None else P,
        poly_Q(k1, k2) if Q is None else Q,
        poly_R(k1, k2) if R is None else R,
    )
    return from_int_form(inst.N, order, den, data)


def verify_instance(inst: RelationInstance, order: int, **overrides) -> dict:
    """Check one instance; report in the scan's JSON schema."""
    k1, k2 = inst.k1, inst.k2
    den, data = _residual_int(
        inst, order,
        overrides.get("alpha", coeff_alpha(k1, k2)),
        overrides.get("beta", coeff_beta(k1, k2)),
        overrides.get("gamma", coeff_gamma(k1, k2)),
        overrides.get("P", poly_P(k1, k2)),
        overrides.get("Q", poly_Q(k1, k2)),
        overrides.get("R", poly_R(k1, k2)),
    )
    first = int_form_is_zero(inst.N, data)
    return {
        "instance": inst.as_dict(),
        "order": order,
        "residual_zero": first is None,
        "first_nonzero_exponent": first,
    }


# ---------------------------------------------------------------------------
# Recurrence system for the closed-form P, Q, R, alpha, beta, gamma.
# ---------------------------------------------------------------------------

def _poly_or_zero(maker, k1: int, k2: int, degree: int) -> HomPoly:
    if k1 < 0 or k2 < 0:
        return HomPoly.zero(max(degree, 0))
    return maker(k1, k2)


def recurrence_check(k_max: int) -> dict:
    """Verify the derivative/boundary conditions for all k1+k2 <= k_max-2.

    Pure rational algebra, zero tolerance.  Returns a report with one
    entry per identity per index pair.
    """
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    checks = []
    for ell in range(k_max - 1):
        for k1 in range(ell + 1):
            k2 = ell - k1
            k = ell + 2
            P, Q, R = poly_P(k1, k2), poly_Q(k1, k2), poly_R(k1, k2)
            al, be, ga = coeff_alpha(k1, k2), coeff_beta(k1, k2), coeff_gamma(k1, k2)
            dm = ell - 1
            items = [
                ("dQ_dY", Q.deriv_y().scale(Fraction(-1))
                 == _poly_or_zero(poly_Q, k1 - 1, k2, dm).scale(Fraction(k1))),
                ("dR_mixed", R.deriv_y() - R.deriv_x()
                 == _poly_or_zero(poly_R, k1 - 1, k2, dm).scale(Fraction(k1))),
                ("alpha_u", (k - 1) * al + R.eval(0, 1) == k1 * coeff_alpha(k1 - 1, k2)),
                ("beta_u", Q.eval(1, 0) - P.eval(0, 1) == k1 * coeff_beta(k1 - 1, k2)),
                ("gamma_u", -(k - 1) * ga - R.eval(1, 0) == k1 * coeff_gamma(k1 - 1, k2)),
                ("dQ_mixed", Q.deriv_x() - Q.deriv_y()
                 == _poly_or_zero(poly_Q, k1, k2 - 1, dm).scale(Fraction(k2))),
                ("dR_dX", R.deriv_x().scale(Fraction(-1))
                 == _poly_or_zero(poly_R, k1, k2 - 1, dm).scale(Fraction(k2))),
                ("alpha_v", R.eval(0, 1) - P.eval(1, 0) == k2 * coeff_alpha(k1, k2 - 1)),
                ("beta_v", (k - 1) * be + Q.eval(1, 0) == k2 * coeff_beta(k1, k2 - 1)),
                ("gamma_v", -(k - 1) * ga - Q.eval(0, 1) == k2 * coeff_gamma(k1, k2 - 1)),
            ]
            for name, ok in items:
                checks.append({"k1": k1, "k2": k2, "identity": name, "pass": bool(ok)})
    return {"k_max": k_max, "checks": checks,
            "all_pass": all(c["pass"] for c in checks)}


# ---------------------------------------------------------------------------
# Scan driver (parallel-capable, deterministic output).
# ---------------------------------------------------------------------------

def _scan_chunk(args) -> List[dict]:
    """Verify all splits/weights for a chunk of (N, a, b) triples."""
    N, pairs, k_max, order = args
    failures = []
    for a, b in pairs:
        for k in range(2, k_max + 1):
            for k1 in range(k - 1):
                inst = RelationInstance(N, k, k1, k - 2 - k1, a, b)
                report = verify_instance(inst, order)
                if not report["residual_zero"]:
                    failures.append(report)
    return failures


def run_scan(level_max: int, weight_max: int, order: int,
             workers: int = 1, chunk_triples: int = 8) -> dict:
    """Verify every enumerated instance with N <= level_max, k <= weight_max.

    Instances are grouped by parameter triple so that product caches are
    reused across weights and splits.  The summary is independent of the
    worker count (failure reports are sorted before emission).
    """
    tasks = []
    n_instances = 0
    splits = sum(k - 1 for k in range(2, weight_max + 1))
    for N in range(2, level_max + 1):
        nonzero = [(i, j) for i in range(N) for j in range(N) if (i, j) != (0, 0)]
        pairs = [(a, b) for a in nonzero for b in nonzero
                 if ((a[0] + b[0]) % N, (a[1] + b[1]) % N) != (0, 0)]
        n_instances += len(pairs) * splits
        for s in range(0, len(pairs), chunk_triples):
            tasks.append((N, pairs[s:s + chunk_triples], weight_max, order))
    if workers > 1 and tasks:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_scan_chunk, tasks))
    else:
        chunks = [_scan_chunk(t) for t in tasks]
    failures = [f for chunk in chunks for f in chunk]
    failures.sort(key=lambda r: json.dumps(r, sort_keys=True))
    return {
        "level_max": level_max, "weight_max": weight_max, "order": order,
        "instances": n_instances,
        "passed": n_instances - len(failures),
        "failed": len(failures),
        "failures": failures,
    }
