"""Series expansions of the deformed exponentials in generalized powers of y.

::

    e_h(x, y)    = sum_n x^n y^(n,h) / n!      (|hx| < 1)
    e_{-h}(x, y) = sum_n x^n y^[n,h] / n!      (|hx| < 1)
    exp_h(x, y)  = sum_n x^n y^<n,h> / n!      (|hx| < 1 enforced here)

Terms are accumulated exactly.  Every double is a dyadic rational, so each
term ``x^n c_n / n!`` is a ratio of integers over the common denominator
``2^(n*e) * n!`` and the partial sum can be carried as one integer
numerator.  The result is then rounded once.  Plain floating-point
summation (compensated or not) loses everything to cancellation when
``hx < 0`` and ``|y/h|`` is large, because the terms reach ``(1+|hx|)^|y/h|``
while the sum is ``(1-|hx|)^(y/h)``.

A coefficient factor that is exactly zero in floating point, as computed by
:func:`~deformexp.genpow.gen_pow`, is treated as zero, so ``y = m*h`` built
in floats terminates the series after ``m + 1`` terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesResult",
    "CoefficientKind",
    "expand_e_sub",
    "expand_e_sub_neg",
    "expand_e_sup",
    "recurrence_coefficients",
    "series_terms",
    "DEFAULT_MAX_TERMS",
    "DEFAULT_TOL",
]

DEFAULT_MAX_TERMS = 500
DEFAULT_TOL = 1e-13


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    terminated_exactly: bool
    tail_estimate: float


class CoefficientKind(str, Enum):
    """Difference operator whose lowering recurrence generates the coefficients.

    ``FORWARD`` gives ``y^(n,h)``, ``BACKWARD`` gives ``y^[n,h]`` and
    ``CENTRAL`` gives ``y^<n,h>``.
    """

    FORWARD = "forward"
    BACKWARD = "backward"
    CENTRAL = "central"


def _common_scale(y: float, h: float) -> tuple[int, int, int]:
    """Write y = Y/B and h = H/B with B a power of two."""
    py, qy = y.as_integer_ratio()
    ph, qh = h.as_integer_ratio()
    b = max(qy, qh)
    return py * (b // qy), ph * (b // qh), b


def _coefficient_numerators(y: float, h: float, kind: CoefficientKind) -> Iterator[int]:
    """Yield C_n with c_n(y, h) = C_n / B^n exactly (B from ``_common_scale``)."""
    Y, H, _ = _common_scale(y, h)
    if kind is CoefficientKind.CENTRAL:
        even, odd = 1, (0 if y == 0.0 else Y)
        yield even
        yield odd
        n = 0
        while True:
            # c_{n+2} = c_n (y - nh)(y + nh)
            if y - n * h == 0.0 or y + n * h == 0.0:
                even = 0
            else:
                even *= (Y - n * H) * (Y + n * H)
            yield even
            n += 1
            if y - n * h == 0.0 or y + n * h == 0.0:
                odd = 0
            else:
                odd *= (Y - n * H) * (Y + n * H)
            yield odd
            n += 1
    else:
        step, fstep = (H, h) if kind is CoefficientKind.FORWARD else (-H, -h)
        c = 1
        yield c
        k = 0
        while True:
            if y - k * fstep == 0.0:
                c = 0
            else:
                c *= Y - k * step
            yield c
            k += 1


class _ExactTerms:
    """Terms ``x^n c_n / n!`` as exact integer ratios over a shared denominator."""

    def __init__(self, x: float, y: float, h: float, kind: CoefficientKind):
        px, qx = x.as_integer_ratio()
        _, _, b = _common_scale(y, h)
        self.x_num = px
        self.q = qx * b
        self._coeffs = _coefficient_numerators(y, h, kind)
        self._n = -1
        self._x_pow = 1
        self.denominator = 1

    def __iter__(self):
        return self

    def __next__(self) -> tuple[int, int]:
        """Advance to the next term; returns (numerator, denominator)."""
        self._n += 1
        if self._n:
            self._x_pow *= self.x_num
            self.denominator *= self.q * self._n
        return self._x_pow * next(self._coeffs), self.denominator


def _as_float(num: int, den: int) -> float:
    try:
        return num / den
    except OverflowError:
        return math.copysign(math.inf, num)


def _terminates(y: float, h: float, kind: CoefficientKind, max_terms: int) -> bool:
    """True when some factor ``y -+ k h`` with ``k < max_terms`` is exactly zero."""
    if kind is CoefficientKind.CENTRAL or h == 0.0:
        return False
    step = h if kind is CoefficientKind.FORWARD else -h
    m = round(y / step)
    return any(0 <= k < max_terms and y - k * step == 0.0 for k in (m - 1, m, m + 1))


def _sum(x: float, y: float, h: float, kind: CoefficientKind, max_terms: int, tol: float) -> SeriesResult:
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    central = kind is CoefficientKind.CENTRAL
    terms = _ExactTerms(x, y, h, kind)
    # central coefficients vanish one parity at a time, so look two terms ahead
    lookahead = 2 if central else 1
    # a polynomial is summed to its last term, whatever the tolerance says
    polynomial = _terminates(y, h, kind, max_terms)

    num, den = next(terms)
    pending = [next(terms) for _ in range(lookahead)]
    used = 1
    while True:
        exhausted = x == 0.0 or all(a == 0 for a, _ in pending)
        if not central and pending[0][0] == 0:
            exhausted = True
        if central and y == 0.0:
            exhausted = True
        value = _as_float(num, den)
        if exhausted:
            return SeriesResult(value, used, True, 0.0)
        nxt = max(abs(_as_float(a, d)) for a, d in pending)
        if not polynomial and nxt < tol * max(1.0, abs(value)):
            return SeriesResult(value, used, False, nxt)
        if used >= max_terms or not math.isfinite(value) or not math.isfinite(nxt):
            partial = SeriesResult(value, used, False, nxt)
            raise ConvergenceError(
                f"series not converged after {used} terms (next term {nxt:.3g}, tol {tol:g})",
                result=partial,
            )
        a, d = pending.pop(0)
        num = num * (d // den) + a
        den = d
        pending.append(next(terms))
        used += 1


def _check_args(x: float, y: float, h: float) -> tuple[float, float, float]:
    x, y, h = float(x), float(y), float(h)
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(h)):
        raise DomainError("series arguments must be finite")
    if abs(h * x) >= 1.0:
        raise DomainError(f"expansion requires |hx| < 1, got |hx| = {abs(h * x)!r}", value=x)
    return x, y, h


def expand_e_sub(x: float, y: float, h: float, max_terms: int = DEFAULT_MAX_TERMS, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Partial sum of ``sum_n x^n y^(n,h) / n!``, which converges to ``e_sub(x, y, h)``.

    Stops when the next term drops below ``tol * max(1, |partial sum|)``.
    When ``y/h`` is a nonnegative integer ``m`` the sum is a polynomial and
    all ``m + 1`` terms are taken regardless of ``tol``; the result is then
    flagged ``terminated_exactly``.

    >>> r = expand_e_sub(0.2, 3, 1)
    >>> round(r.value, 12), r.terms_used, r.terminated_exactly
    (1.728, 4, True)
    """
    x, y, h = _check_args(x, y, h)
    return _sum(x, y, h, CoefficientKind.FORWARD, max_terms, tol)


def expand_e_sub_neg(x: float, y: float, h: float, max_terms: int = DEFAULT_MAX_TERMS, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Partial sum of ``sum_n x^n y^[n,h] / n!``, converging to ``e_sub(x, y, -h)``."""
    x, y, h = _check_args(x, y, h)
    return _sum(x, y, h, CoefficientKind.BACKWARD, max_terms, tol)


def expand_e_sup(x: float, y: float, h: float, max_terms: int = DEFAULT_MAX_TERMS, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Partial sum of ``sum_n x^n y^<n,h> / n!``, converging to ``e_sup(x, y, h)``.

    Only ``y = 0`` or ``x = 0`` terminate exactly; otherwise at most one
    parity of the central coefficients dies out.
    """
    x, y, h = _check_args(x, y, h)
    return _sum(x, y, h, CoefficientKind.CENTRAL, max_terms, tol)


def recurrence_coefficients(y: float, h: float, n_max: int, kind: CoefficientKind | str = CoefficientKind.FORWARD) -> list[float]:
    """Coefficients ``c_0 .. c_{n_max}`` from the lowering recurrences.

    ``c_n = c_{n-1} (y -+ (n-1)h)`` for the forward/backward families and
    ``c_{n+2} = c_n (y - nh)(y + nh)`` with ``c_1 = y`` for the central one,
    all starting from ``c_0 = 1``.  Each is the unique polynomial solution
    of ``D c_n = n c_{n-1}`` with ``c_n(0) = 0`` for the matching difference
    operator ``D``.

    >>> recurrence_coefficients(3, 1, 4, "forward")
    [1.0, 3.0, 6.0, 6.0, 0.0]
    >>> recurrence_coefficients(1, 1, 4, "central")
    [1.0, 1.0, 1.0, 0.0, -3.0]
    """
    kind = CoefficientKind(kind)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    y, h = float(y), float(h)
    out = [1.0]
    if kind is CoefficientKind.CENTRAL:
        if n_max >= 1:
            out.append(y)
        for n in range(n_max - 1):
            out.append(out[n] * ((y - n * h) * (y + n * h)))
    else:
        s = h if kind is CoefficientKind.FORWARD else -h
        for k in range(n_max):
            out.append(out[k] * (y - k * s))
    return out


def series_terms(x: float, y: float, h: float, kind: CoefficientKind | str, count: int) -> list[float]:
    """The first ``count`` terms ``x^n c_n / n!`` as correctly rounded floats."""
    terms = _ExactTerms(float(x), float(y), float(h), CoefficientKind(kind))
    return [_as_float(a, d) for a, d in (next(terms) for _ in range(count))]
