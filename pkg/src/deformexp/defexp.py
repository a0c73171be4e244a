"""The deformed exponentials ``e_h(x, y)`` and ``exp_h(x, y)``.

Both are evaluated through the logarithmic deformation maps::

    e_h(x, y)   = exp(y * {x}_h) = (1 + hx) ** (y / h)
    exp_h(x, y) = exp(y * {x}^h) = (hx + sqrt(1 + h^2 x^2)) ** (y / h)

so ``y / h`` is never formed and ``h = 0`` gives ``exp(xy)`` exactly.
"""

from __future__ import annotations

import math
from enum import Enum

from .defarith import brace_sub, brace_sup
from .errors import DomainError

__all__ = [
    "DeformedExpKind",
    "e_sub",
    "e_sup",
    "tsallis_q_exp",
    "kaniadakis_exp",
    "quantum_group_exp",
    "sub_to_sup_shift",
]


class DeformedExpKind(str, Enum):
    SUB = "sub"
    SUP = "sup"


def e_sub(x: float, y: float, h: float) -> float:
    """``(1 + hx) ** (y/h)``; raises :class:`DomainError` when ``1 + hx <= 0``.

    Evaluated as ``exp(y * log1p(hx) / h)``, so integer cases may be off by
    a few ulp:

    >>> e_sub(1, 3, 1)
    7.999999999999998
    """
    return math.exp(float(y) * brace_sub(x, h))


def e_sup(x: float, y: float, h: float) -> float:
    """``(hx + sqrt(1 + h^2 x^2)) ** (y/h)``, defined and positive for all real x."""
    return math.exp(float(y) * brace_sup(x, h))


def tsallis_q_exp(x: float, q: float) -> float:
    """Tsallis q-exponential with the usual cutoff to 0 outside ``1 + (1-q)x > 0``."""
    x, q = float(x), float(q)
    if q == 1.0:
        return math.exp(x)
    h = 1.0 - q
    if h * x <= -1.0:
        return 0.0
    return e_sub(x, 1.0, h)


def kaniadakis_exp(x: float, kappa: float) -> float:
    return e_sup(x, 1.0, kappa)


def quantum_group_exp(y: float, p: float) -> float:
    """``p ** (y / (p - 1))``, i.e. ``e_{p-1}(1, y)``; ``p = 1`` gives ``exp(y)``."""
    p = float(p)
    if not p > 0.0:
        raise DomainError(f"quantum_group_exp needs p > 0, got p={p!r}", value=p)
    return e_sub(1.0, y, p - 1.0)


def sub_to_sup_shift(x: float, h: float) -> float:
    """Argument ``s`` with ``e_sub(s, y, h) == e_sup(x, y, h)`` for every y.

    Mathematically ``x - (1 - sqrt(1 + h^2 x^2)) / h``; evaluated in the
    cancellation-free form ``x + h x^2 / (1 + sqrt(1 + h^2 x^2))``.
    """
    x, h = float(x), float(h)
    if h == 0.0:
        raise ValueError("sub_to_sup_shift requires h != 0")
    return x + h * x * x / (1.0 + math.hypot(1.0, h * x))
