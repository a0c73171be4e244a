"""Deformed derivatives ``d/d_h z`` and ``d/d^h z``.

The limits of ``(f(z) - f(u)) / (z (-) u)`` as ``u -> z`` reduce to the
ordinary derivative times a prefactor: ``1 + hz`` for the ``(+)_h`` group
and ``sqrt(1 + h^2 z^2)`` for ``(+)^h``.  Those prefactors are used
directly; ``f'`` itself is a symmetric difference.
"""

from __future__ import annotations

import math
import sys
from typing import Callable

from .defarith import Family, brace_sub, brace_sup
from .defexp import DeformedExpKind, e_sub, e_sup

__all__ = [
    "DerivKind",
    "prefactor",
    "default_step",
    "deformed_derivative",
    "deformed_derivative_analytic",
    "partial_y_factor",
]

DerivKind = Family

_CBRT_EPS = sys.float_info.epsilon ** (1.0 / 3.0)


def prefactor(z: float, h: float, kind: DerivKind | str) -> float:
    if DerivKind(kind) is DerivKind.SUB:
        return 1.0 + h * z
    return math.hypot(1.0, h * z)


def default_step(z: float) -> float:
    return _CBRT_EPS * max(1.0, abs(z))


def deformed_derivative(
    f: Callable[[float], float],
    z: float,
    h: float,
    kind: DerivKind | str = DerivKind.SUB,
    fd_step: float | None = None,
) -> float:
    """Numerical ``df/d_h z`` (kind SUB) or ``df/d^h z`` (kind SUP) at ``z``.

    ``fd_step`` defaults to ``cbrt(eps) * max(1, |z|)``.
    """
    z, h = float(z), float(h)
    s = default_step(z) if fd_step is None else float(fd_step)
    if not s > 0:
        raise ValueError("fd_step must be positive")
    slope = (f(z + s) - f(z - s)) / (2.0 * s)
    out = prefactor(z, h, kind) * slope
    if not math.isfinite(out):
        raise ArithmeticError(f"non-finite deformed derivative at z={z!r}")
    return out


def deformed_derivative_analytic(
    kind: DerivKind | str,
    which_exp: DeformedExpKind | str,
    x: float,
    y: float,
    h: float,
) -> float:
    """Closed-form ``y * E(x, y, h)`` for the exponential matched to ``kind``."""
    kind, which_exp = DerivKind(kind), DeformedExpKind(which_exp)
    if kind.value != which_exp.value:
        raise ValueError(f"derivative kind {kind.value!r} does not act diagonally on the {which_exp.value!r} exponential")
    func = e_sub if which_exp is DeformedExpKind.SUB else e_sup
    return float(y) * func(x, y, h)


def partial_y_factor(x: float, h: float, which_exp: DeformedExpKind | str) -> float:
    """Eigenvalue of d/dy on E(x, .): ``{x}_h`` or ``{x}^h``."""
    if DeformedExpKind(which_exp) is DeformedExpKind.SUB:
        return brace_sub(x, h)
    return brace_sup(x, h)
