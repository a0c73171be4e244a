"""Forward, backward and central h-difference operators."""

from __future__ import annotations

from typing import Callable

__all__ = ["forward_diff", "backward_diff", "central_diff"]

RealFunction = Callable[[float], float]


def _step(h: float) -> float:
    h = float(h)
    if h == 0.0:
        raise ValueError("difference operators need h != 0; use defcalc for derivatives")
    return h


def forward_diff(f: RealFunction, z: float, h: float) -> float:
    """``(f(z + h) - f(z)) / h``."""
    h = _step(h)
    return (f(z + h) - f(z)) / h


def backward_diff(f: RealFunction, z: float, h: float) -> float:
    """``(f(z) - f(z - h)) / h``."""
    h = _step(h)
    return (f(z) - f(z - h)) / h


def central_diff(f: RealFunction, z: float, h: float) -> float:
    """``(f(z + h) - f(z - h)) / (2h)``."""
    h = _step(h)
    return (f(z + h) - f(z - h)) / (2.0 * h)
