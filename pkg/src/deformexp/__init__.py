"""Deformed exponentials of two variables and their difference calculus.

Public API is re-exported here; see the individual modules for details.
"""

from .defarith import (
    DomainInterval,
    Family,
    brace_sub,
    brace_sup,
    group_domain,
    neg_sub,
    ominus_sub,
    ominus_sup,
    oplus_sub,
    oplus_sup,
)
from .defcalc import DerivKind, deformed_derivative, deformed_derivative_analytic, partial_y_factor
from .defexp import (
    DeformedExpKind,
    e_sub,
    e_sup,
    kaniadakis_exp,
    quantum_group_exp,
    sub_to_sup_shift,
    tsallis_q_exp,
)
from .diffops import backward_diff, central_diff, forward_diff
from .errors import ConvergenceError, DeformExpError, DomainError, EmptyGridError, UnknownIdentityError
from .genpow import PowerKind, binom_via_genpow, gen_pow
from .series import (
    CoefficientKind,
    SeriesResult,
    expand_e_sub,
    expand_e_sub_neg,
    expand_e_sup,
    recurrence_coefficients,
)

__version__ = "0.1.0"
