"""Closure constants for strongly stable constant-mean-curvature hypersurfaces.

The CMC extension runs the same absorption scheme with the traceless second
fundamental form in place of the full one.  The gradient estimate carries two
constants,

    delta = A / (4 (1+q)^2),
    C0 = 4 (1+delta)(1+q)^2 / A + 16 (1+q)^2 [1 + (1+delta)^2 (1+q)^2] / A^2,
    B0 = max(0, 4 n (n-2)^2 (1+q)^2 / ((n-1) A^2) - 8n/A - n/(1+q)^2),

and the terminal closure turns them into

    a = 2 (1+q)^2 (C0 + 1),        b = max(0, 2 (1+q)^2 B0 - n),
    calC1 = 2^q a^(1+q),           calC2 = 2^q b^(1+q).

On a geodesic ball of radius R with interior fraction theta, the resulting
local estimate has a gradient term calC1 / ((1-theta) R)^(2+2q) and a
curvature term calC2 |H|^(2+2q).  Whenever |H| (1-theta) R <= 1, i.e. below
the mean-curvature radius 1/|H|, the curvature term is dominated by the
gradient scale and the estimate collapses to the minimal-like form with the
combined constant (calC1 + calC2) / ((1-theta) R)^(2+2q).

Raw (pre-clamp) values of B0 and b are exposed alongside the clamped ones so
the boundary of the zero region stays inspectable.  No unit system is
enforced: R and 1/|H| must be supplied in the same length unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .params import ParamPoint, gap_or_raise

__all__ = [
    "CmcScale",
    "CmcConstantBundle",
    "LocalEstimate",
    "Regime",
    "delta_param",
    "c0_cmc",
    "b0_raw",
    "b0_cmc",
    "closure_coefficients",
    "cal_constants",
    "local_estimate",
    "threshold_radius",
    "cmc_bundle",
]


class Regime(Enum):
    """Which term of the local estimate controls the given ball."""

    MINIMAL_LIKE = "MinimalLike"
    CURVATURE_DOMINATED = "CurvatureDominated"


@dataclass(frozen=True)
class CmcScale:
    """Geometry of one ball: mean curvature H, radius R, interior fraction theta.

    H is stored signed; all formulas use |H|.  R and 1/|H| must share a
    length unit.
    """

    H: float
    R: float
    theta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.H):
            raise DomainError(f"mean curvature H must be finite, got {self.H!r}")
        if not (math.isfinite(self.R) and self.R > 0.0):
            raise DomainError(f"ball radius R must be positive, got {self.R!r}")
        if not (math.isfinite(self.theta) and 0.0 < self.theta < 1.0):
            raise DomainError(f"interior fraction theta must lie in (0, 1), got {self.theta!r}")

    @property
    def transition_width(self) -> float:
        """Width ``(1 - theta) R`` of the cutoff transition annulus."""
        return (1.0 - self.theta) * self.R


@dataclass(frozen=True)
class CmcConstantBundle:
    """All CMC constants at one parameter point, raw and clamped."""

    point: ParamPoint
    delta: float
    C0: float
    B0: float
    B0_raw: float
    a: float
    b: float
    calC1: float
    calC2: float


@dataclass(frozen=True)
class LocalEstimate:
    """Coefficients of the local curvature estimate on one ball.

    ``gradient_coefficient`` and ``curvature_coefficient`` carry units of
    1/length^(2+2q); ``combined_small_scale`` is the minimal-like coefficient
    valid whenever the regime is MINIMAL_LIKE.
    """

    gradient_coefficient: float
    curvature_coefficient: float
    combined_small_scale: float
    regime: Regime


def delta_param(p: ParamPoint) -> float:
    """Return ``delta = A / (4 (1+q)^2)``."""
    gap = gap_or_raise(p)
    one_q = 1.0 + p.q
    return gap / (4.0 * one_q * one_q)


def c0_cmc(p: ParamPoint) -> float:
    """Gradient-estimate constant C0 of the CMC setting."""
    gap = gap_or_raise(p)
    q = p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    delta = gap / (4.0 * one_q_sq)
    one_delta = 1.0 + delta
    return (
        4.0 * one_delta * one_q_sq / gap
        + 16.0 * one_q_sq * (1.0 + one_delta * one_delta * one_q_sq) / (gap * gap)
    )


def b0_raw(p: ParamPoint) -> float:
    """Pre-clamp curvature-coupling coefficient.

    ``4 n (n-2)^2 (1+q)^2 / ((n-1) A^2) - 8n/A - n/(1+q)^2``; negative values
    are clamped to zero by ``b0_cmc``.
    """
    gap = gap_or_raise(p)
    n, q = p.n, p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    return (
        4.0 * n * (n - 2) * (n - 2) * one_q_sq / ((n - 1) * gap * gap)
        - 8.0 * n / gap
        - n / one_q_sq
    )


def b0_cmc(p: ParamPoint) -> float:
    """Positive part ``max(0, b0_raw)``; a negative coefficient only strengthens
    the estimate, so it may be replaced by zero."""
    return max(0.0, b0_raw(p))


def closure_coefficients(p: ParamPoint) -> tuple[float, float]:
    """Return ``(a, b)`` with ``a = 2(1+q)^2 (C0 + 1)`` and
    ``b = max(0, 2(1+q)^2 B0 - n)``."""
    q = p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    a = 2.0 * one_q_sq * (c0_cmc(p) + 1.0)
    b = max(0.0, 2.0 * one_q_sq * b0_cmc(p) - p.n)
    return a, b


def cal_constants(p: ParamPoint) -> tuple[float, float]:
    """Return ``(calC1, calC2) = (2^q a^(1+q), 2^q b^(1+q))``."""
    a, b = closure_coefficients(p)
    q = p.q
    two_q = 2.0**q
    return two_q * a ** (1.0 + q), two_q * b ** (1.0 + q)


def local_estimate(p: ParamPoint, s: CmcScale) -> LocalEstimate:
    """Evaluate the local estimate coefficients on the ball described by ``s``.

    The regime is MINIMAL_LIKE exactly when ``|H| (1-theta) R <= 1``
    (threshold inclusive); in that regime the curvature term is dominated by
    ``calC2 / ((1-theta) R)^(2+2q)`` and the combined coefficient applies.
    """
    cal1, cal2 = cal_constants(p)
    exponent = 2.0 + 2.0 * p.q
    width = s.transition_width
    width_pow = width**exponent
    abs_h = abs(s.H)
    regime = Regime.MINIMAL_LIKE if abs_h * width <= 1.0 else Regime.CURVATURE_DOMINATED
    return LocalEstimate(
        gradient_coefficient=cal1 / width_pow,
        curvature_coefficient=cal2 * abs_h**exponent,
        combined_small_scale=(cal1 + cal2) / width_pow,
        regime=regime,
    )


def threshold_radius(H: float, theta: float) -> float:
    """Largest radius R with ``|H| (1-theta) R <= 1``, i.e. ``1/(|H|(1-theta))``.

    Returns ``math.inf`` for H = 0: a minimal hypersurface is below the
    mean-curvature scale at every radius.
    """
    if not (math.isfinite(theta) and 0.0 < theta < 1.0):
        raise DomainError(f"interior fraction theta must lie in (0, 1), got {theta!r}")
    if H == 0.0:
        return math.inf
    return 1.0 / (abs(H) * (1.0 - theta))


def cmc_bundle(p: ParamPoint) -> CmcConstantBundle:
    """Evaluate every CMC constant at ``p`` (requires a positive gap)."""
    gap_or_raise(p)
    raw = b0_raw(p)
    a, b = closure_coefficients(p)
    cal1, cal2 = cal_constants(p)
    return CmcConstantBundle(
        point=p,
        delta=delta_param(p),
        C0=c0_cmc(p),
        B0=max(0.0, raw),
        B0_raw=raw,
        a=a,
        b=b,
        calC1=cal1,
        calC2=cal2,
    )
