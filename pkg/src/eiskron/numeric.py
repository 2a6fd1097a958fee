"""Floating-point evaluation of the continuous-parameter Eisenstein series.

Two independent evaluators:

* ``eval_E_fourier`` sums the Fourier expansion with real (not
  necessarily rational) torus coordinates, truncated at a cutoff on the
  exponent mu*nu.  Valid for every weight k >= 1.
* ``eval_E_lattice`` sums the defining lattice double series (k >= 3,
  where it converges absolutely).  The raw rectangular truncation
  converges too slowly for tight cross-checks, so terms near the
  boundary are weighted by a smooth radial window; this stays a direct
  lattice summation with no knowledge of the Fourier expansion.

On top of these sit numerical checks of the 3-term relation at generic
complex parameters, the antiholomorphic derivative relations (via
central finite differences), modularity under SL2(Z), and the z -> 0
asymptotics.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple

import numpy as np

from .relations import (HomPoly, coeff_alpha, coeff_beta, coeff_gamma, poly_P,
                        poly_Q, poly_R)

TWO_PI_I = 2j * math.pi
_INT_TOL = 1e-9


def _e(x) -> complex:
    return cmath.exp(TWO_PI_I * x)


def _is_int(t: float) -> bool:
    return abs(t - round(t)) < _INT_TOL


def _frac(t: float) -> float:
    if _is_int(t):
        return 0.0
    return t - math.floor(t)


@dataclass(frozen=True)
class TorusPoint:
    """Real coordinates (x1, x2) of z = x1*tau + x2 on the torus."""

    x1: float
    x2: float

    def to_z(self, tau: complex) -> complex:
        return self.x1 * tau + self.x2

    @staticmethod
    def from_z(z: complex, tau: complex) -> "TorusPoint":
        x1 = z.imag / tau.imag
        return TorusPoint(x1, z.real - x1 * tau.real)

    def is_lattice(self) -> bool:
        return _is_int(self.x1) and _is_int(self.x2)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-self.x1, -self.x2)

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.x1 + other.x1, self.x2 + other.x2)


@dataclass(frozen=True)
class NumericConfig:
    tau: complex
    fourier_terms: int = 80
    lattice_cutoff: int = 200
    tol: float = 1e-8
    fd_tol: float = 1e-5

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        if self.fourier_terms < 1 or self.lattice_cutoff < 1:
            raise ValueError("cutoffs must be >= 1")


# ---------------------------------------------------------------------------
# Evaluators.
# ---------------------------------------------------------------------------

def eval_E_fourier(k: int, p: TorusPoint, cfg: NumericConfig) -> complex:
    """Fourier-expansion value at z = x1*tau + x2, cutoff on mu*nu."""
    if k < 1:
        raise ValueError("weight must be >= 1")
    tau = complex(cfg.tau)
    x1, x2 = p.x1, p.x2
    if k == 2 and p.is_lattice():
        raise ValueError("weight-2 series undefined at lattice points")

    if k == 1:
        if _is_int(x1) and _is_int(x2):
            a0 = 0j
        elif _is_int(x1):
            a0 = -0.5 * (1 + _e(x2)) / (1 - _e(x2))
        else:
            a0 = complex(_frac(x1) - 0.5)
    else:
        a0 = complex(_bern_poly_float(k, _frac(x1)) / k)

    M = cfg.fourier_terms
    acc = a0
    for nu0, char_sign, sign in ((_frac(x1), 1, -1.0),
                                 (_frac(-x1), -1, float((-1) ** (k + 1)))):
        nu = nu0 if nu0 > 0 else 1.0
        while nu <= M:
            ratio = cmath.exp(TWO_PI_I * (char_sign * x2 + tau * nu))
            coeff = sign * nu ** (k - 1)
            term = 1.0 + 0j
            mu_max = int(M / nu)
            for _ in range(mu_max):
                term *= ratio
                acc += coeff * term
            nu += 1.0
    return acc


def _bern_poly_float(k: int, t: float) -> float:
    from math import comb
    from .eisenstein import bernoulli_number
    return sum(comb(k, j) * float(bernoulli_number(j)) * t ** (k - j)
               for j in range(k + 1))


def eval_E_lattice(k: int, z: complex, tau: complex, cfg: NumericConfig) -> complex:
    """Direct lattice sum over |m|, |n| <= cutoff with a smooth radial window.

    Independent oracle for eval_E_fourier; absolutely convergent for k >= 3.
    """
    if k < 3:
        raise ValueError("lattice sum requires weight >= 3")
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    L = cfg.lattice_cutoff
    p = TorusPoint.from_z(z, tau)
    idx = np.arange(-L, L + 1)
    m, n = np.meshgrid(idx, idx, indexing="ij")
    lam = m * tau + n
    nonzero = (m != 0) | (n != 0)
    r = np.abs(lam)
    R = lattice_window_radius(L, tau)
    t = np.clip((R - r) / (R - 0.5 * R), 0.0, 1.0)
    w = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)  # C^2 smoothstep window
    char = np.exp(TWO_PI_I * (m * p.x2 - n * p.x1))
    lam_safe = np.where(nonzero, lam, 1.0)
    terms = np.where(nonzero, w * char / lam_safe ** k, 0.0)
    pref = -math.factorial(k - 1) / (-TWO_PI_I) ** k
    return complex(pref * terms.sum())


def lattice_window_radius(L: int, tau: complex) -> float:
    """Radius of the largest disk (in |m*tau+n|) inside the index square."""
    return L * tau.imag / max(1.0, abs(tau))


# ---------------------------------------------------------------------------
# Truncation-error estimates ("tail-bound discipline").
# ---------------------------------------------------------------------------

def fourier_tail_estimate(k: int, cfg: NumericConfig) -> float:
    """Crude bound on the omitted Fourier tail: C * |q|^cutoff."""
    q = abs(cmath.exp(TWO_PI_I * complex(cfg.tau)))
    M = cfg.fourier_terms
    return 2.0 * (M + 1.0) ** k * q ** M / (1.0 - q)


def lattice_tail_estimate(k: int, tau: complex, cfg: NumericConfig) -> float:
    """Empirically calibrated error scale of the windowed lattice sum."""
    R = lattice_window_radius(cfg.lattice_cutoff, tau)
    return 200.0 * R ** (-(k + 2))


# ---------------------------------------------------------------------------
# Numeric bracket and relation check.
# ---------------------------------------------------------------------------

def eval_bracket_numeric(P: HomPoly, u: TorusPoint, v: TorusPoint,
                         cfg: NumericConfig) -> complex:
    """P[u, v] with continuous parameters, via the Fourier evaluator."""
    ell = P.degree
    acc = 0j
    for i, c in enumerate(P.coeffs):
        if c:
            acc += float(c) * (eval_E_fourier(i + 1, u, cfg)
                               * eval_E_fourier(ell - i + 1, v, cfg))
    return acc


def check_relation_numeric(k1: int, k2: int, u: TorusPoint, v: TorusPoint,
                           cfg: NumericConfig) -> float:
    """|LHS - RHS| of the weight k1+k2+2 relation at generic points."""
    if k1 < 0 or k2 < 0:
        raise ValueError("indices must be >= 0")
    w = -(u + v)
    for name, pt in (("u", u), ("v", v), ("u+v", w)):
        if pt.is_lattice():
            raise ValueError(f"parameter {name} must avoid the lattice")
    k = k1 + k2 + 2
    lhs = (eval_bracket_numeric(poly_P(k1, k2), u, v, cfg)
           + eval_bracket_numeric(poly_Q(k1, k2), v, w, cfg)
           + eval_bracket_numeric(poly_R(k1, k2), w, u, cfg))
    rhs = (float(coeff_alpha(k1, k2)) * eval_E_fourier(k, u, cfg)
           + float(coeff_beta(k1, k2)) * eval_E_fourier(k, v, cfg)
           + float(coeff_gamma(k1, k2)) * eval_E_fourier(k, w, cfg))
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Finite-difference checks of the derivative relations.
# ---------------------------------------------------------------------------

def _lattice_distance(z: complex, tau: complex) -> float:
    p = TorusPoint.from_z(z, tau)
    best = math.inf
    for dm in (math.floor(p.x1), math.ceil(p.x1)):
        for dn in (math.floor(p.x2), math.ceil(p.x2)):
            best = min(best, abs(z - (dm * tau + dn)))
    return best


def _wirtinger_conj(F, z: complex, h: float) -> complex:
    """Central-difference estimate of dF/dzbar = (dF/dx + i dF/dy)/2."""
    dx = (F(z + h) - F(z - h)) / (2 * h)
    dy = (F(z + 1j * h) - F(z - 1j * h)) / (2 * h)
    return (dx + 1j * dy) / 2


def _check_step(z: complex, tau: complex, h: float) -> None:
    if h >= 0.01 * _lattice_distance(z, tau):
        raise ValueError("step too large relative to lattice distance")


def check_diff_relation(k: int, p: TorusPoint, cfg: NumericConfig,
                        h: float = 1e-4) -> float:
    """Error in -(tau - taubar) d/dzbar E^(k) = 1 (k=1) or (k-1) E^(k-1)."""
    tau = complex(cfg.tau)
    z0 = p.to_z(tau)
    _check_step(z0, tau, h)

    def F(z: complex) -> complex:
        return eval_E_fourier(k, TorusPoint.from_z(z, tau), cfg)

    lhs = -(tau - tau.conjugate()) * _wirtinger_conj(F, z0, h)
    if k == 1:
        target = 1.0 + 0j
    else:
        target = (k - 1) * eval_E_fourier(k - 1, p, cfg)
    return abs(lhs - target)


def check_diff_bracket(P: HomPoly, u: TorusPoint, v: TorusPoint,
                       cfg: NumericConfig, h: float = 1e-4) -> Tuple[float, float]:
    """Errors in both derivative formulas for the bracket P[u, v].

    First entry: derivative in conj(u) against dP/dX [u,v] + P(0,1) E^(k-1)_v.
    Second: derivative in conj(v) against dP/dY [u,v] + P(1,0) E^(k-1)_u.
    """
    tau = complex(cfg.tau)
    zu, zv = u.to_z(tau), v.to_z(tau)
    _check_step(zu, tau, h)
    _check_step(zv, tau, h)
    k = P.degree + 2
    minus_vol = -(tau - tau.conjugate())

    def Fu(z: complex) -> complex:
        return eval_bracket_numeric(P, TorusPoint.from_z(z, tau), v, cfg)

    def Fv(z: complex) -> complex:
        return eval_bracket_numeric(P, u, TorusPoint.from_z(z, tau), cfg)

    lhs_u = minus_vol * _wirtinger_conj(Fu, zu, h)
    tgt_u = (eval_bracket_numeric(P.deriv_x(), u, v, cfg) if P.degree > 0 else 0j) \
        + float(P.eval(0, 1)) * eval_E_fourier(k - 1, v, cfg)
    lhs_v = minus_vol * _wirtinger_conj(Fv, zv, h)
    tgt_v = (eval_bracket_numeric(P.deriv_y(), u, v, cfg) if P.degree > 0 else 0j) \
        + float(P.eval(1, 0)) * eval_E_fourier(k - 1, u, cfg)
    return abs(lhs_u - tgt_u), abs(lhs_v - tgt_v)


# ---------------------------------------------------------------------------
# Modularity and asymptotics.
# ---------------------------------------------------------------------------

def check_modularity(k: int, x: TorusPoint, gamma: Sequence[Sequence[int]],
                     cfg: NumericConfig) -> float:
    """|E~_x(gamma tau) - (c tau + d)^k E~_{x gamma}(tau)|."""
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise ValueError("gamma must have determinant 1")
    tau = complex(cfg.tau)
    gtau = (a * tau + b) / (c * tau + d)
    xg = TorusPoint(x.x1 * a + x.x2 * c, x.x1 * b + x.x2 * d)
    lhs = eval_E_fourier(k, x, replace(cfg, tau=gtau))
    rhs = (c * tau + d) ** k * eval_E_fourier(k, xg, cfg)
    return abs(lhs - rhs)


def eval_G2(tau: complex, cutoff: int = 200) -> complex:
    """The weight-2 series -1/24 + sum_{m,n>=1} n q^{mn}, summed directly."""
    q = cmath.exp(TWO_PI_I * tau)
    acc = complex(-1.0 / 24.0)
    for m in range(1, cutoff + 1):
        for n in range(1, cutoff // m + 1):
            acc += n * q ** (m * n)
    return acc


def _richardson(values: List[complex]) -> complex:
    """Limit of v_j = A + B t_j + C t_j^2 + ... with t_{j+1} = t_j / 2."""
    row = list(values)
    for m in range(1, len(values)):
        fac = 2.0 ** m
        row = [(fac * row[j + 1] - row[j]) / (fac - 1.0)
               for j in range(len(row) - 1)]
    return row[0]


def check_asymptotics(k: int, tau: complex, cfg: NumericConfig,
                      steps: int = 6, t0: float = 0.04) -> dict:
    """Behaviour of E^(k) as z -> 0 along a ray with irrational slope.

    Weight 1: z*E^(1)_z -> 1/(2 pi i), with a bounded slope; also checked
    along the real ray x1 = 0.  Weight 2: E^(2)_z - x1/(2 pi i z) tends
    to -2 G_2(tau), with G_2 summed from its own series.
    """
    if k not in (1, 2):
        raise ValueError("asymptotics are for weights 1 and 2")
    cfg = replace(cfg, tau=tau)
    d1, d2 = 1.0 / math.sqrt(5.0), 1.0 / math.sqrt(7.0)
    ts = [t0 * 0.5 ** j for j in range(steps)]
    vals: List[complex] = []
    for t in ts:
        p = TorusPoint(t * d1, t * d2)
        z = p.to_z(tau)
        E = eval_E_fourier(k, p, cfg)
        if k == 1:
            vals.append(z * E - 1.0 / TWO_PI_I)
        else:
            vals.append(E - p.x1 / (TWO_PI_I * z))
    limit = _richardson(vals)
    report = {
        "check": "asymptotics",
        "weight": k,
        "ray": [d1, d2],
        "steps": [list(pair) for pair in zip(ts, [abs(v) for v in vals])],
        "slope_bound": max(abs(v - vals[-1]) / t for v, t in zip(vals, ts)),
    }
    if k == 1:
        report["limit_error"] = abs(limit)
        # real ray x1 = 0: exercises the -(1/2)(1+e(z))/(1-e(z)) branch
        real_vals = [complex(t * d2) * eval_E_fourier(1, TorusPoint(0.0, t * d2), cfg)
                     - 1.0 / TWO_PI_I for t in ts]
        report["real_ray_error"] = abs(_richardson(real_vals))
    else:
        target = -2.0 * eval_G2(tau)
        report["target"] = [target.real, target.imag]
        report["limit_error"] = abs(limit - target)
    report["tail_estimate"] = fourier_tail_estimate(k, cfg)
    return report


def make_report(check: str, params: dict, residual: float,
                tail_estimate: float, tol: float) -> dict:
    """One JSON report line in the numeric module's schema."""
    return {
        "check": check,
        "params": params,
        "residual": residual,
        "tail_estimate": tail_estimate,
        "pass": bool(residual < tol),
    }
