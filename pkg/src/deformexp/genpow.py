"""Generalized integer powers with step ``h``.

Three families are provided:

* backward ``z^(n,h) = z (z - h) ... (z - (n-1)h)``
* forward  ``z^[n,h] = z (z + h) ... (z + (n-1)h)``
* central  ``z^<n,h>``, the symmetric product pairing ``z - jh`` with ``z + jh``

For ``h = 0`` every family collapses to the ordinary power ``z**n``.
"""

from __future__ import annotations

import math
from enum import Enum

__all__ = ["PowerKind", "gen_pow", "binom_via_genpow"]


class PowerKind(str, Enum):
    BACKWARD = "backward"
    FORWARD = "forward"
    CENTRAL = "central"


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise TypeError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return n


def gen_pow(z: float, n: int, h: float, kind: PowerKind | str = PowerKind.BACKWARD) -> float:
    """Evaluate the generalized power of ``z`` of order ``n`` and step ``h``.

    Factors are multiplied left to right in double precision.  For the
    central kind each pair ``(z - jh)(z + jh)`` is formed first so that the
    result is exactly invariant under ``h -> -h``.

    >>> gen_pow(5, 3, 1, "backward"), gen_pow(2, 3, 1, "forward")
    (60.0, 24.0)
    >>> gen_pow(5, 4, 1, "central")
    525.0
    """
    kind = PowerKind(kind)
    n = _check_n(n)
    z = float(z)
    h = float(h)
    if n == 0:
        return 1.0
    if h == 0.0:
        return z**n

    acc = 1.0
    if kind is PowerKind.BACKWARD:
        for k in range(n):
            acc *= z - k * h
    elif kind is PowerKind.FORWARD:
        for k in range(n):
            acc *= z + k * h
    else:
        m, odd = divmod(n, 2)
        if odd:
            acc = z
            for k in range(m):
                j = 2 * k + 1
                acc *= (z - j * h) * (z + j * h)
        else:
            for k in range(m):
                j = 2 * k
                acc *= (z - j * h) * (z + j * h)
    return acc


def binom_via_genpow(z: float, n: int, h: float) -> float:
    """Generalized binomial coefficient ``C(z/h, n)`` as ``z^(n,h) / (h^n n!)``."""
    n = _check_n(n)
    h = float(h)
    if h == 0.0:
        raise ValueError("binom_via_genpow requires h != 0")
    return gen_pow(z, n, h, PowerKind.BACKWARD) / (h**n * math.factorial(n))
