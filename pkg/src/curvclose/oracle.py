"""Extended-precision reference evaluation and binary64 cross-checks.

Every bundle field can be recomputed here with mpmath at 40 significant
digits.  The oracle deliberately takes a different route than the binary64
path wherever one exists: the terminal constants use the fully expanded forms
in ``D(n, q)`` rather than the composed ``prefactor * C3^(1+q)`` evaluation,
and the ratio root uses the direct quotient ``(CH/CY)^(1/(1+q))`` rather than
the closed form.  Agreement between the two routes therefore checks both the
algebra and the floating-point evaluation at once.

Deviations are measured relative to a conditioning-aware scale: for fields
defined by a cancellation (the raw curvature coupling ``B0_raw`` and the
clamped quantities built from it) the scale is the magnitude sum of the
constituent terms, because the relative error of a difference is unbounded at
its interior zero crossing no matter the working precision.  All other fields
use their own magnitude.

The default grid keeps plain points well inside the domain and adds two
deliberately near-boundary probes per dimension (gap ~ 7e-7 and ~ 4e-7).
Near-boundary points, defined as gap < 1e-6, are reported in a separate
bucket with a relaxed tolerance: the binary64 gap itself loses roughly
``1e-16 / A`` relative accuracy to cancellation there, which no evaluation
strategy at fixed precision can recover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from . import cmc, minimal
from .errors import DomainError
from .params import ParamPoint

__all__ = [
    "ORACLE_DPS",
    "STRICT_TOLERANCE",
    "BOUNDARY_TOLERANCE",
    "BOUNDARY_GAP",
    "FIELD_NAMES",
    "PointComparison",
    "OracleReport",
    "oracle_fields",
    "float_fields",
    "compare_point",
    "default_grid",
    "run_check",
]

ORACLE_DPS = 40
STRICT_TOLERANCE = 1e-12
BOUNDARY_TOLERANCE = 1e-9
# Points with stability gap below this are reported in the relaxed bucket.
BOUNDARY_GAP = 1e-6

FIELD_NAMES = (
    "A",
    "C1",
    "C3",
    "CY",
    "C3H",
    "CH",
    "ratio",
    "ratio_root",
    "f_bound",
    "delta",
    "C0",
    "B0",
    "B0_raw",
    "a",
    "b",
    "calC1",
    "calC2",
)


def _mp_fields(n: int, q_float: float) -> tuple[dict[str, mpf], dict[str, mpf]]:
    """Field values and conditioning scales at (n, exact binary64 q)."""
    n_mp = mpf(n)
    q = mpf(q_float)  # exact conversion of the binary64 input
    one = mpf(1)
    one_q = one + q
    gap = 2 / n_mp - q * q
    if gap <= 0:
        raise DomainError(f"stability gap nonpositive at n={n}, q={q_float}")

    aux = q * q + 2 * q + 2
    c1 = 2 / gap + 8 * aux / gap**2
    c3 = (2 + q) * (one_q * c1 + 1)
    d = 1 + 2 * one_q / gap + 8 * one_q * aux / gap**2

    if q == 0:
        q_pow_q = one
        q_pow_frac = one
    else:
        q_pow_q = mpmath.exp(q * mpmath.log(q))
        q_pow_frac = mpmath.exp(q / one_q * mpmath.log(q))

    # Expanded terminal forms (independent of the composed binary64 route).
    cy = (
        mpmath.power(2, one_q)
        * q_pow_q
        / mpmath.power(one_q, one_q)
        * mpmath.power((2 + q) * d, one_q)
    )
    c3h = 2 * one_q**2 * (one_q**2 * c1 + 1)
    ch = mpmath.power(
        2 * one_q**2 * (1 + 2 * one_q**2 / gap + 8 * one_q**2 * aux / gap**2),
        one_q,
    )
    ratio = ch / cy
    ratio_root = mpmath.power(ratio, 1 / one_q)
    f_val = mpf("0.5") if q == 0 else mpmath.power(one_q, 4) / (q_pow_frac * (2 + q))

    delta = gap / (4 * one_q**2)
    one_delta = 1 + delta
    c0 = 4 * one_delta * one_q**2 / gap + 16 * one_q**2 * (
        1 + one_delta**2 * one_q**2
    ) / gap**2

    b0_terms = (
        4 * n_mp * (n_mp - 2) ** 2 * one_q**2 / ((n_mp - 1) * gap**2),
        8 * n_mp / gap,
        n_mp / one_q**2,
    )
    b0_raw = b0_terms[0] - b0_terms[1] - b0_terms[2]
    b0 = b0_raw if b0_raw > 0 else mpf(0)
    a_coeff = 2 * one_q**2 * (c0 + 1)
    b_shift = 2 * one_q**2 * b0
    b_coeff = b_shift - n_mp if b_shift > n_mp else mpf(0)
    two_q = mpmath.power(2, q)
    cal1 = two_q * mpmath.power(a_coeff, one_q)
    cal2 = two_q * mpmath.power(b_coeff, one_q)

    values = {
        "A": gap,
        "C1": c1,
        "C3": c3,
        "CY": cy,
        "C3H": c3h,
        "CH": ch,
        "ratio": ratio,
        "ratio_root": ratio_root,
        "f_bound": f_val,
        "delta": delta,
        "C0": c0,
        "B0": b0,
        "B0_raw": b0_raw,
        "a": a_coeff,
        "b": b_coeff,
        "calC1": cal1,
        "calC2": cal2,
    }

    cancellation_scale = b0_terms[0] + b0_terms[1] + b0_terms[2]
    b_scale = b_shift + n_mp
    scales = {name: abs(value) for name, value in values.items()}
    scales["B0_raw"] = cancellation_scale
    scales["B0"] = cancellation_scale
    scales["b"] = b_scale
    scales["calC2"] = two_q * mpmath.power(b_scale, one_q)
    return values, scales


def oracle_fields(n: int, q: float) -> dict[str, mpf]:
    """Extended-precision values of every bundle field at (n, q)."""
    with mp.workdps(ORACLE_DPS):
        values, _ = _mp_fields(n, q)
        return values


def float_fields(n: int, q: float) -> dict[str, float]:
    """Binary64 values of every bundle field at (n, q)."""
    p = ParamPoint(n, q)
    bundle = minimal.constant_bundle(p)
    cmc_values = cmc.cmc_bundle(p)
    return {
        "A": bundle.A,
        "C1": bundle.C1,
        "C3": bundle.C3,
        "CY": bundle.CY,
        "C3H": bundle.C3H,
        "CH": bundle.CH,
        "ratio": bundle.ratio,
        "ratio_root": bundle.ratio_root,
        "f_bound": minimal._f_bound_extended(q),
        "delta": cmc_values.delta,
        "C0": cmc_values.C0,
        "B0": cmc_values.B0,
        "B0_raw": cmc_values.B0_raw,
        "a": cmc_values.a,
        "b": cmc_values.b,
        "calC1": cmc_values.calC1,
        "calC2": cmc_values.calC2,
    }


@dataclass(frozen=True)
class PointComparison:
    n: int
    q: float
    gap: float
    near_boundary: bool
    deviations: dict[str, float]

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    @property
    def worst_field(self) -> str:
        return max(self.deviations, key=lambda name: self.deviations[name])


def compare_point(n: int, q: float) -> PointComparison:
    """Scale-relative deviation of the binary64 path from the oracle at (n, q)."""
    floats = float_fields(n, q)
    with mp.workdps(ORACLE_DPS):
        values, scales = _mp_fields(n, q)
        deviations: dict[str, float] = {}
        for name in FIELD_NAMES:
            scale = scales[name]
            if scale == 0:
                # Exactly clamped quantities: both paths must agree on zero.
                deviations[name] = 0.0 if floats[name] == 0.0 else math.inf
            else:
                deviations[name] = float(abs(mpf(floats[name]) - values[name]) / scale)
        gap = float(values["A"])
    return PointComparison(
        n=n,
        q=q,
        gap=gap,
        near_boundary=gap < BOUNDARY_GAP,
        deviations=deviations,
    )


@dataclass(frozen=True)
class OracleReport:
    comparisons: tuple[PointComparison, ...]
    max_strict: float
    max_boundary: float

    @property
    def passed(self) -> bool:
        return self.max_strict < STRICT_TOLERANCE and self.max_boundary < BOUNDARY_TOLERANCE


# Interior points keep the gap at least this large; the two extra probes per
# dimension push into the relaxed near-boundary bucket.
_STRICT_MIN_GAP = 3e-3
_BOUNDARY_PROBES = (7e-7, 4e-7)
_DEFAULT_N = (2, 3, 4, 5, 6, 7, 8, 10, 12)
_DEFAULT_STEPS = 21


def default_grid(
    n_values: tuple[int, ...] = _DEFAULT_N, steps: int = _DEFAULT_STEPS
) -> list[tuple[int, float]]:
    """Default cross-check grid: interior sweep plus near-boundary probes."""
    if steps < 2 or not n_values:
        raise DomainError("oracle grid needs at least one dimension and two steps")
    points: list[tuple[int, float]] = []
    for n in n_values:
        q_top = math.sqrt(2.0 / n - _STRICT_MIN_GAP)
        for k in range(steps):
            points.append((n, k * q_top / (steps - 1)))
        for gap_target in _BOUNDARY_PROBES:
            points.append((n, math.sqrt(2.0 / n - gap_target)))
    return points


def run_check(points: list[tuple[int, float]] | None = None) -> OracleReport:
    """Compare binary64 and extended-precision paths over a grid of points."""
    if points is None:
        points = default_grid()
    if not points:
        raise DomainError("empty oracle grid")
    comparisons = tuple(compare_point(n, q) for n, q in points)
    strict = [c.max_deviation for c in comparisons if not c.near_boundary]
    boundary = [c.max_deviation for c in comparisons if c.near_boundary]
    return OracleReport(
        comparisons=comparisons,
        max_strict=max(strict) if strict else 0.0,
        max_boundary=max(boundary) if boundary else 0.0,
    )
