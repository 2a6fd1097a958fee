"""Exact engine and verifier for level-N Eisenstein series.

Builds q-expansions over Q(zeta_N), verifies the 3-term product
relations to arbitrary truncation order, and cross-checks the
continuous-parameter theory with independent floating-point evaluators.
"""

from .cyclotomic import CycNum, LevelMismatchError, cyclotomic_polynomial, zeta_pow
from .eisenstein import (EisensteinIndex, InvalidIndexError, bernoulli_number,
                         bernoulli_poly_eval, bg_tilde_s, constant_term,
                         eisenstein_qexp)
from .qseries import QExpansion
from .relations import (HomPoly, InvalidInstanceError, RelationInstance,
                        bracket, coeff_alpha, coeff_beta, coeff_gamma,
                        enumerate_instances, poly_P, poly_Q, poly_R,
                        recurrence_check, relation_residual, run_scan,
                        verify_instance)

__version__ = "0.1.0"

__all__ = [
    "CycNum", "LevelMismatchError", "cyclotomic_polynomial", "zeta_pow",
    "QExpansion",
    "EisensteinIndex", "InvalidIndexError", "bernoulli_number",
    "bernoulli_poly_eval", "bg_tilde_s", "constant_term", "eisenstein_qexp",
    "HomPoly", "InvalidInstanceError", "RelationInstance", "bracket",
    "coeff_alpha", "coeff_beta", "coeff_gamma", "enumerate_instances",
    "poly_P", "poly_Q", "poly_R", "recurrence_check", "relation_residual",
    "run_scan", "verify_instance",
    "__version__",
]
