"""Deformation maps and the two deformed addition groups.

``{x}_h = ln(1 + hx)/h`` carries ``(I, (+)_h)`` onto ordinary addition,
where ``x1 (+)_h x2 = x1 + x2 + h x1 x2``.  Likewise ``{x}^h = asinh(hx)/h``
carries ``(R, (+)^h)`` onto addition, with
``x1 (+)^h x2 = x1 sqrt(1 + h^2 x2^2) + x2 sqrt(1 + h^2 x1^2)``.

Every function accepts ``h = 0`` and returns the classical value there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

__all__ = [
    "Family",
    "DomainInterval",
    "group_domain",
    "check_sub_domain",
    "brace_sub",
    "brace_sup",
    "oplus_sub",
    "ominus_sub",
    "neg_sub",
    "oplus_sup",
    "ominus_sup",
]


class Family(str, Enum):
    SUB = "sub"
    SUP = "sup"


@dataclass(frozen=True)
class DomainInterval:
    """Open interval ``(lower, upper)``; endpoints may be infinite."""

    lower: float
    upper: float

    def __contains__(self, x: float) -> bool:
        return self.lower < x < self.upper

    def __str__(self) -> str:
        return f"({self.lower:g}, {self.upper:g})"


_REALS = DomainInterval(-math.inf, math.inf)


def group_domain(h: float, family: Family | str = Family.SUB) -> DomainInterval:
    """Carrier set of the deformed group for ``h``.

    >>> group_domain(2, "sub")
    DomainInterval(lower=-0.5, upper=inf)
    >>> group_domain(-1, "sub")
    DomainInterval(lower=-inf, upper=1.0)
    """
    family = Family(family)
    h = float(h)
    if family is Family.SUP or h == 0.0:
        return _REALS
    if h > 0:
        return DomainInterval(-1.0 / h, math.inf)
    return DomainInterval(-math.inf, -1.0 / h)


def check_sub_domain(x: float, h: float) -> None:
    """Raise :class:`DomainError` unless ``1 + hx > 0``."""
    if h * x <= -1.0 or math.isnan(x):
        raise DomainError(
            f"1+hx <= 0: x={x!r} is outside {group_domain(h)} for h={h!r}",
            value=x,
            interval=group_domain(h),
        )


def brace_sub(x: float, h: float) -> float:
    x, h = float(x), float(h)
    check_sub_domain(x, h)
    if h == 0.0:
        return x
    return math.log1p(h * x) / h


def brace_sup(x: float, h: float) -> float:
    x, h = float(x), float(h)
    if h == 0.0:
        return x
    return math.asinh(h * x) / h


def oplus_sub(x1: float, x2: float, h: float) -> float:
    return x1 + x2 + h * (x1 * x2)


def neg_sub(x: float, h: float) -> float:
    """Group inverse ``-x / (1 + hx)``; the pole ``x = -1/h`` is rejected."""
    den = 1.0 + h * x
    if den == 0.0:
        raise DomainError(f"x={x!r} is the pole -1/h of the inverse for h={h!r}", value=x)
    return -x / den


def ominus_sub(x1: float, x2: float, h: float) -> float:
    den = 1.0 + h * x2
    if den == 0.0:
        raise DomainError(f"x2={x2!r} is the pole -1/h of subtraction for h={h!r}", value=x2)
    return (x1 - x2) / den


def oplus_sup(x1: float, x2: float, h: float) -> float:
    return x1 * math.hypot(1.0, h * x2) + x2 * math.hypot(1.0, h * x1)


def ominus_sup(x1: float, x2: float, h: float) -> float:
    return x1 * math.hypot(1.0, h * x2) - x2 * math.hypot(1.0, h * x1)
