"""Closure constants of the curvature estimate for stable minimal hypersurfaces.

Both terminal absorption routes start from the shared gradient constant

    C1(n, q) = 2/A + 8 (q^2 + 2q + 2) / A^2,        A = 2/n - q^2.

The classical route absorbs the remaining coupling with a weighted product
inequality and produces

    C3(n, q) = (2 + q) ((1 + q) C1 + 1),
    CY(n, q) = 2^(1+q) q^q / (1+q)^(1+q) * C3^(1+q),

while the alternative route splits complementary powers of the cutoff and
produces

    C3H(n, q) = 2 (1+q)^2 ((1+q)^2 C1 + 1),
    CH(n, q)  = C3H^(1+q).

The comparison machinery lives here as well: the (1+q)-th root of CH/CY has
the closed form

    ratio_root = (1+q)^3 / (q^(q/(1+q)) (2+q)) * (1 + q (D-1)/D),

is bounded above by f(q) = (1+q)^4 / (q^(q/(1+q)) (2+q)), and f is strictly
increasing on (0, 1) with f(1/8) < 1, which forces CH < CY for q <= 1/8.
``crossover_q`` locates, per dimension, where the two routes trade places for
larger q.

Evaluation conventions: ``q^q`` and ``q^(q/(1+q))`` at ``q = 0`` are defined
as 1 (their limits), so every function here admits ``q = 0`` as a continuous
extension.  Near the singular boundary ``q -> sqrt(2/n)`` the functions raise
``DomainError`` once the gap is nonpositive but impose no artificial margin
below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .params import ParamPoint, QInterval, d_factor, gap_or_raise, quadratic_aux

__all__ = [
    "ConstantBundle",
    "c1_shared",
    "c3_young",
    "c_young",
    "c3_holder",
    "c_holder",
    "ratio_root",
    "f_bound",
    "g_log",
    "g_prime",
    "crossover_q",
    "constant_bundle",
    "xpowx",
    "xpow_frac",
]

# Initial scan resolution used by crossover_q before bisection.
_CROSSOVER_SCAN = 1 << 14
_CROSSOVER_TOL = 1e-9
# Relative margin kept below the singular boundary when scanning for a crossover.
_BOUNDARY_MARGIN = 1e-9


def xpowx(q: float) -> float:
    """``q^q`` for q >= 0, with the continuous extension ``0^0 = 1``.

    Computed as ``exp(q log q)``; for subnormal q the product ``q log q``
    underflows towards 0 and the expression degrades gracefully to 1.
    """
    if q == 0.0:
        return 1.0
    return math.exp(q * math.log(q))


def xpow_frac(q: float) -> float:
    """``q^(q/(1+q))`` for q >= 0, with the continuous extension 1 at q = 0."""
    if q == 0.0:
        return 1.0
    return math.exp(q / (1.0 + q) * math.log(q))


def c1_shared(p: ParamPoint) -> float:
    """Shared gradient constant ``2/A + 8(q^2 + 2q + 2)/A^2``."""
    gap = gap_or_raise(p)
    return 2.0 / gap + 8.0 * quadratic_aux(p.q) / (gap * gap)


def c3_young(p: ParamPoint) -> float:
    """Quartic-term constant of the classical route, ``(2+q)((1+q) C1 + 1)``."""
    q = p.q
    return (2.0 + q) * ((1.0 + q) * c1_shared(p) + 1.0)


def c_young(p: ParamPoint) -> float:
    """Terminal constant of the classical route.

    ``CY = 2^(1+q) q^q / (1+q)^(1+q) * C3^(1+q)``; agrees with the fully
    expanded form in ``D(n, q)`` up to a few ulp.
    """
    q = p.q
    prefactor = 2.0 ** (1.0 + q) * xpowx(q) / (1.0 + q) ** (1.0 + q)
    return prefactor * c3_young(p) ** (1.0 + q)


def c3_holder(p: ParamPoint) -> float:
    """Quartic-term constant of the alternative route, ``2(1+q)^2((1+q)^2 C1 + 1)``."""
    q = p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    return 2.0 * one_q_sq * (one_q_sq * c1_shared(p) + 1.0)


def c_holder(p: ParamPoint) -> float:
    """Terminal constant of the alternative route, ``C3H^(1+q)``."""
    return c3_holder(p) ** (1.0 + p.q)


def ratio_root(p: ParamPoint) -> float:
    """Closed form of ``(CH/CY)^(1/(1+q))``.

    ``(1+q)^3 / (q^(q/(1+q)) (2+q)) * (1 + q (D-1)/D)`` with ``D = D(n, q)``;
    agrees with the direct quotient to within a few ulp and tends to 1/2 as
    q -> 0+ at fixed n.
    """
    big_d = d_factor(p)
    q = p.q
    lead = (1.0 + q) ** 3 / (xpow_frac(q) * (2.0 + q))
    return lead * (1.0 + q * (big_d - 1.0) / big_d)


def f_bound(q: float) -> float:
    """Dimension-free upper bound ``f(q) = (1+q)^4 / (q^(q/(1+q)) (2+q))``.

    Defined on the open interval (0, 1), where it is strictly increasing.
    """
    if not 0.0 < q < 1.0:
        raise DomainError(f"f_bound requires 0 < q < 1, got {q}")
    return (1.0 + q) ** 4 / (xpow_frac(q) * (2.0 + q))


def _f_bound_extended(q: float) -> float:
    # Continuous extension used by grid reports: f(0) := 1/2 via q^(q/(1+q)) -> 1.
    if q == 0.0:
        return 0.5
    return f_bound(q)


def g_log(q: float) -> float:
    """``log f(q) = 4 log(1+q) - log(2+q) - (q/(1+q)) log q`` on (0, 1)."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"g_log requires 0 < q < 1, got {q}")
    return 4.0 * math.log1p(q) - math.log(2.0 + q) - q / (1.0 + q) * math.log(q)


def g_prime(q: float) -> float:
    """Derivative of ``g_log``; positive on (0, 1), so f is increasing there.

    ``g'(q) = 4/(1+q) - 1/(2+q) - log(q)/(1+q)^2 - 1/(1+q)``.
    """
    if not 0.0 < q < 1.0:
        raise DomainError(f"g_prime requires 0 < q < 1, got {q}")
    one_q = 1.0 + q
    return 4.0 / one_q - 1.0 / (2.0 + q) - math.log(q) / (one_q * one_q) - 1.0 / one_q


def _young_minus_holder(n: int, q: float) -> float:
    p = ParamPoint(n, q)
    return c_young(p) - c_holder(p)


def crossover_q(n: int) -> QInterval:
    """Bracket the smallest q > 1/8 where the two terminal constants cross.

    Scans ``CY - CH`` on a 2^14-point grid over (1/8, sqrt(2/n)) (stopping a
    relative margin of 1e-9 below the singular boundary), then bisects the
    first sign change down to a bracket of width <= 1e-9.  Ties at an exact
    zero are broken toward the smaller q.  Returns an empty interval when the
    alternative route wins throughout.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    lo = 0.125
    hi = math.sqrt(2.0 / n) * (1.0 - _BOUNDARY_MARGIN)
    if hi <= lo:
        return QInterval.make_empty()

    prev_q = lo
    prev_h = _young_minus_holder(n, lo)
    bracket: tuple[float, float] | None = None
    for k in range(1, _CROSSOVER_SCAN):
        qk = lo + k * (hi - lo) / (_CROSSOVER_SCAN - 1)
        hk = _young_minus_holder(n, qk)
        if prev_h > 0.0 >= hk:
            bracket = (prev_q, qk)
            break
        prev_q, prev_h = qk, hk
    if bracket is None:
        return QInterval.make_empty()

    a, b = bracket
    while b - a > _CROSSOVER_TOL:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        if _young_minus_holder(n, mid) > 0.0:
            a = mid
        else:
            b = mid
    return QInterval.closed(a, b)


@dataclass(frozen=True)
class ConstantBundle:
    """All minimal-case constants at one parameter point.

    ``ratio = CH / CY`` and ``ratio_root`` is its (1+q)-th root evaluated
    through the closed form, so the two agree up to evaluation rounding.
    """

    point: ParamPoint
    A: float
    C1: float
    C3: float
    CY: float
    C3H: float
    CH: float
    ratio: float
    ratio_root: float


def constant_bundle(p: ParamPoint) -> ConstantBundle:
    """Evaluate every minimal-case constant at ``p`` (requires a positive gap)."""
    gap = gap_or_raise(p)
    cy = c_young(p)
    ch = c_holder(p)
    return ConstantBundle(
        point=p,
        A=gap,
        C1=c1_shared(p),
        C3=c3_young(p),
        CY=cy,
        C3H=c3_holder(p),
        CH=ch,
        ratio=ch / cy,
        ratio_root=ratio_root(p),
    )
