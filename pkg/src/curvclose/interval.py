"""Sound interval arithmetic over binary64.

Every operation returns an interval that contains the exact image of its
operand intervals (outward widening).  Soundness is obtained by post-operation
inflation rather than directed-rounding mode switches, for portability:

* ``+ - * /`` are correctly rounded by IEEE 754, so the true endpoint lies
  within one ulp of the computed one; each endpoint is widened outward by
  1 ulp step.
* ``exp``/``log`` (and the powers built from them) go through libm, whose
  worst-case error on mainstream platforms is a couple of ulp; their
  endpoints are widened by 4 ulp steps.

The enclosures are therefore slightly looser than directed rounding would
give, which the callers compensate with subdivision.  Division by an interval
containing zero and logarithms of intervals touching zero raise
``DomainError`` rather than silently widening to infinity; intervals must
stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["Interval", "isquare", "ilog", "iexp", "ipow", "ixpowx"]

_ARITH_STEPS = 1
_LIBM_STEPS = 4
_INV_E = math.exp(-1.0)


def _down(x: float, steps: int) -> float:
    for _ in range(steps):
        x = math.nextafter(x, -math.inf)
    return x


def _up(x: float, steps: int) -> float:
    for _ in range(steps):
        x = math.nextafter(x, math.inf)
    return x


def _require_finite(lo: float, hi: float) -> None:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"enclosure escaped the finite binary64 range: [{lo}, {hi}]")


@dataclass(frozen=True)
class Interval:
    """A closed interval [lo, hi] with finite binary64 endpoints."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        _require_finite(self.lo, self.hi)
        if self.lo > self.hi:
            raise DomainError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def _widened(cls, lo: float, hi: float, steps: int) -> "Interval":
        lo, hi = _down(lo, steps), _up(hi, steps)
        _require_finite(lo, hi)
        return cls(lo, hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: "Interval | float | int") -> "Interval":
        other = _coerce(other)
        return Interval._widened(self.lo + other.lo, self.hi + other.hi, _ARITH_STEPS)

    __radd__ = __add__

    def __sub__(self, other: "Interval | float | int") -> "Interval":
        other = _coerce(other)
        return Interval._widened(self.lo - other.hi, self.hi - other.lo, _ARITH_STEPS)

    def __rsub__(self, other: "Interval | float | int") -> "Interval":
        return _coerce(other).__sub__(self)

    def __mul__(self, other: "Interval | float | int") -> "Interval":
        other = _coerce(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval._widened(min(products), max(products), _ARITH_STEPS)

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval | float | int") -> "Interval":
        other = _coerce(other)
        if other.lo <= 0.0 <= other.hi:
            raise DomainError(f"division by an interval containing zero: [{other.lo}, {other.hi}]")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Interval._widened(min(quotients), max(quotients), _ARITH_STEPS)

    def __rtruediv__(self, other: "Interval | float | int") -> "Interval":
        return _coerce(other).__truediv__(self)


def _coerce(value: "Interval | float | int") -> Interval:
    if isinstance(value, Interval):
        return value
    return Interval.point(float(value))


def isquare(x: Interval) -> Interval:
    """Tight enclosure of x^2 (handles intervals straddling zero)."""
    a, b = x.lo * x.lo, x.hi * x.hi
    lo = 0.0 if x.lo <= 0.0 <= x.hi else min(a, b)
    return Interval._widened(lo, max(a, b), _ARITH_STEPS)


def ilog(x: Interval) -> Interval:
    """Enclosure of log(x); requires x > 0."""
    if x.lo <= 0.0:
        raise DomainError(f"logarithm of an interval touching zero: [{x.lo}, {x.hi}]")
    return Interval._widened(math.log(x.lo), math.log(x.hi), _LIBM_STEPS)


def iexp(x: Interval) -> Interval:
    """Enclosure of exp(x)."""
    try:
        lo = math.exp(x.lo)
        hi = math.exp(x.hi)
    except OverflowError:
        raise DomainError(f"exp overflow on [{x.lo}, {x.hi}]") from None
    if math.isinf(hi):
        raise DomainError(f"exp overflow on [{x.lo}, {x.hi}]")
    return Interval._widened(lo, hi, _LIBM_STEPS)


def ipow(x: Interval, y: "Interval | float | int") -> Interval:
    """Enclosure of x^y for a strictly positive base, via exp(y log x)."""
    return iexp(ilog(x) * _coerce(y))


def ixpowx(q: Interval) -> Interval:
    """Enclosure of q^q on q >= 0.

    ``q^q`` decreases on (0, 1/e] and increases afterwards, with limit 1 at
    zero.  A box whose lower end touches zero uses that limit as the upper
    bound; elsewhere plain monotonicity on the computed values applies.
    """
    if q.lo < 0.0:
        raise DomainError(f"q^q requires q >= 0, got [{q.lo}, {q.hi}]")

    def value(t: float) -> float:
        return 1.0 if t == 0.0 else math.exp(t * math.log(t))

    if q.lo == 0.0:
        if q.hi == 0.0:
            return Interval.point(1.0)
        if q.hi <= _INV_E:
            lo = value(q.hi)
        else:
            lo = value(_INV_E)
        hi = max(1.0, value(q.hi))
        return Interval._widened(lo, hi, _LIBM_STEPS)

    if q.hi <= _INV_E:
        lo, hi = value(q.hi), value(q.lo)
    elif q.lo >= _INV_E:
        lo, hi = value(q.lo), value(q.hi)
    else:
        lo, hi = value(_INV_E), max(value(q.lo), value(q.hi))
    return Interval._widened(lo, hi, _LIBM_STEPS)
