"""Free absorption parameters and their numerical optimization.

Each closure proof fixes a handful of absorption parameters for readability:
the gradient estimate picks ``eps1 = eps2 = A/4``, the classical terminal
step picks ``eps3 = 1`` and sacrifices the fraction ``lambda = 1/2`` of the
left-hand integral, and the CMC gradient estimate picks
``eps1 = A/4, eps3 = delta, eps2 = A/(4 (1+delta)(1+q)^2)``.  This module
keeps all of them free:

    c1_general(eps1, eps2) = (1/eps1 + 1 + (1+q)^2/eps2) / (A - eps1 - eps2)
    c3_general(C1, eps3)   = ((1+q)^2 + (1+q) eps3) C1 + 1 + (1+q)/eps3
    young_terminal_general(q, C3, lambda)
                           = C3^(1+q) q^q / ((1+q)^(1+q) lambda^q (1-lambda))
    cmc_general(eps1, eps2, eps3) -> (C0, B0_raw) with left coefficient
        L = 2/n + 2q + 1 - eps1 - (1+eps3)(1+q)^2(1+eps2)

and minimizes the resulting constants over the open feasible regions.  The
canonical choices always reproduce the closed-form constants exactly (an
identity in rational arithmetic, checked by the test suite), and they seed
the search, so the optimizer can never lose to them.

The search itself is deterministic and derivative-free: a coarse feasible
grid (32 points per axis, evaluated with numpy and reduced with a first-min
argmin, which breaks ties toward the lexicographically smallest parameter
vector) seeds a Nelder-Mead simplex run in log-parameter space (logit space
for the absorption fraction), with infeasible points rejected at infinite
penalty.  The feasible regions are open and every objective blows up at each
boundary, so the minima are interior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, FeasibilityError
from .minimal import xpowx
from .params import ParamPoint, gap_or_raise

__all__ = [
    "YoungEpsilons",
    "CmcEpsilons",
    "OptimizationResult",
    "Target",
    "c1_general",
    "c3_general",
    "young_terminal_general",
    "c_holder_general",
    "cmc_general",
    "canonical_young_epsilons",
    "canonical_cmc_epsilons",
    "optimize",
]

_GRID_POINTS = 32
_MAX_ITERATIONS = 200
_REL_TOL = 1e-10


class Target(Enum):
    """Which closure constant the optimizer minimizes."""

    YOUNG_CY = "young"
    HOLDER_CH = "holder"
    CMC_CAL_C1 = "cmc"


@dataclass(frozen=True)
class YoungEpsilons:
    """Absorption parameters of the classical route.

    ``eps1, eps2`` balance the gradient estimate (feasible while
    ``eps1 + eps2 < A``), ``eps3`` balances the quartic step, and ``lam`` is
    the absorbed fraction of the left-hand integral (canonically 1/2).
    """

    eps1: float
    eps2: float
    eps3: float
    lam: float

    def __post_init__(self) -> None:
        for name in ("eps1", "eps2", "eps3"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise FeasibilityError(f"{name} must be positive and finite, got {value!r}")
        if not (math.isfinite(self.lam) and 0.0 < self.lam < 1.0):
            raise FeasibilityError(f"lam must lie in (0, 1), got {self.lam!r}")

    def feasible_for(self, gap: float) -> bool:
        return self.eps1 + self.eps2 < gap


@dataclass(frozen=True)
class CmcEpsilons:
    """Absorption parameters of the CMC gradient estimate.

    Feasibility additionally requires a positive left coefficient
    ``2/n + 2q + 1 - eps1 - (1+eps3)(1+q)^2(1+eps2)``, checked at use.
    """

    eps1: float
    eps2: float
    eps3: float

    def __post_init__(self) -> None:
        for name in ("eps1", "eps2", "eps3"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise FeasibilityError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of one optimization run.

    ``best_value <= paper_value`` always holds because the canonical choice
    seeds the search; ``improvement_ratio = best_value / paper_value``.
    """

    best_params: tuple[float, ...]
    best_value: float
    paper_value: float
    improvement_ratio: float
    evaluations: int
    converged: bool


def c1_general(p: ParamPoint, eps1: float, eps2: float) -> float:
    """Gradient constant with free absorption parameters.

    ``(1/eps1 + 1 + (1+q)^2/eps2) / (A - eps1 - eps2)``; the canonical choice
    ``eps1 = eps2 = A/4`` reproduces the closed-form constant.
    """
    gap = gap_or_raise(p)
    if not (eps1 > 0.0 and eps2 > 0.0):
        raise FeasibilityError(f"eps1, eps2 must be positive, got {eps1}, {eps2}")
    left = gap - eps1 - eps2
    if not left > 0.0:
        raise FeasibilityError(
            f"infeasible absorption: eps1 + eps2 = {eps1 + eps2} >= A = {gap}"
        )
    one_q = 1.0 + p.q
    return (1.0 / eps1 + 1.0 + one_q * one_q / eps2) / left


def c3_general(p: ParamPoint, c1_value: float, eps3: float) -> float:
    """Quartic-step constant with a free absorption parameter.

    ``((1+q)^2 + (1+q) eps3) C1 + 1 + (1+q)/eps3``; ``eps3 = 1`` reproduces
    the compact form ``(2+q)((1+q) C1 + 1)``.
    """
    if not eps3 > 0.0:
        raise FeasibilityError(f"eps3 must be positive, got {eps3}")
    if not c1_value > 0.0:
        raise FeasibilityError(f"C1 value must be positive, got {c1_value}")
    one_q = 1.0 + p.q
    return (one_q * one_q + one_q * eps3) * c1_value + 1.0 + one_q / eps3


def young_terminal_general(q: float, c3_value: float, lam: float) -> float:
    """Terminal constant of the classical route with a free absorbed fraction.

    ``C3^(1+q) q^q / ((1+q)^(1+q) lam^q (1-lam))``; ``lam = 1/2`` reproduces
    the canonical prefactor ``2^(1+q) q^q / (1+q)^(1+q)``, and the fraction is
    optimal at ``lam = q/(1+q)``.
    """
    if not (math.isfinite(lam) and 0.0 < lam < 1.0):
        raise FeasibilityError(f"lam must lie in (0, 1), got {lam!r}")
    if not c3_value > 0.0:
        raise FeasibilityError(f"C3 value must be positive, got {c3_value}")
    one_q = 1.0 + q
    return (
        c3_value**one_q
        * xpowx(q)
        / (one_q**one_q * lam**q * (1.0 - lam))
    )


def c_holder_general(p: ParamPoint, eps1: float, eps2: float) -> float:
    """Terminal constant of the alternative route with free gradient parameters.

    ``(2 (1+q)^2 ((1+q)^2 c1_general + 1))^(1+q)``; the canonical
    ``eps1 = eps2 = A/4`` reproduces the closed form.
    """
    q = p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    base = 2.0 * one_q_sq * (one_q_sq * c1_general(p, eps1, eps2) + 1.0)
    return base ** (1.0 + q)


def cmc_general(p: ParamPoint, e: CmcEpsilons) -> tuple[float, float]:
    """CMC gradient constants with free absorption parameters.

    Returns ``(C0, B0_raw)`` where, with
    ``L = 2/n + 2q + 1 - eps1 - (1+eps3)(1+q)^2(1+eps2)``,

        C0     = ((1+q)^2/eps1 + (1+eps3)(1+q)^2 (1 + 1/eps2)) / L
        B0_raw = (n (n-2)^2 / (4 (n-1) eps3) - 2n - n eps3) / L.

    Raises ``FeasibilityError`` when ``L <= 0``.
    """
    gap_or_raise(p)
    n, q = p.n, p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    left = 2.0 / n + 2.0 * q + 1.0 - e.eps1 - (1.0 + e.eps3) * one_q_sq * (1.0 + e.eps2)
    if not left > 0.0:
        raise FeasibilityError(f"infeasible absorption: left coefficient L = {left} <= 0")
    c0 = (one_q_sq / e.eps1 + (1.0 + e.eps3) * one_q_sq * (1.0 + 1.0 / e.eps2)) / left
    b0raw = (
        n * (n - 2) * (n - 2) / (4.0 * (n - 1) * e.eps3) - 2.0 * n - n * e.eps3
    ) / left
    return c0, b0raw


def canonical_young_epsilons(p: ParamPoint) -> YoungEpsilons:
    """Canonical parameter choice of the classical route."""
    gap = gap_or_raise(p)
    return YoungEpsilons(eps1=gap / 4.0, eps2=gap / 4.0, eps3=1.0, lam=0.5)


def canonical_cmc_epsilons(p: ParamPoint) -> CmcEpsilons:
    """Canonical parameter choice of the CMC gradient estimate."""
    gap = gap_or_raise(p)
    q = p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    delta = gap / (4.0 * one_q_sq)
    return CmcEpsilons(
        eps1=gap / 4.0,
        eps2=gap / (4.0 * (1.0 + delta) * one_q_sq),
        eps3=delta,
    )


# ---------------------------------------------------------------------------
# Optimizer internals
# ---------------------------------------------------------------------------


def _cmc_objective_value(p: ParamPoint, c0: float, b0raw: float, weight: float) -> float:
    q, n = p.q, p.n
    one_q_sq = (1.0 + q) * (1.0 + q)
    value = 2.0**q * (2.0 * one_q_sq * (c0 + 1.0)) ** (1.0 + q)
    if weight > 0.0:
        b = max(0.0, 2.0 * one_q_sq * max(0.0, b0raw) - n)
        value += weight * 2.0**q * b ** (1.0 + q)
    return value


class _TargetSpec:
    """Scalar/vectorized objective pair plus grid axes for one target."""

    def __init__(
        self,
        p: ParamPoint,
        scalar,
        vectorized,
        axes: list[np.ndarray],
        canonical_params: tuple[float, ...],
        lam_axis_index: int | None,
    ) -> None:
        self.p = p
        self.scalar = scalar
        self.vectorized = vectorized
        self.axes = axes
        self.canonical_params = canonical_params
        self.lam_axis_index = lam_axis_index

    def penalized(self, params: tuple[float, ...]) -> float:
        try:
            return self.scalar(params)
        except (FeasibilityError, OverflowError):
            return math.inf


def _young_spec(p: ParamPoint) -> _TargetSpec:
    gap = gap_or_raise(p)
    q = p.q
    one_q = 1.0 + q
    canonical = canonical_young_epsilons(p)

    def scalar(params: tuple[float, ...]) -> float:
        e1, e2, e3, lam = params
        c1 = c1_general(p, e1, e2)
        c3 = c3_general(p, c1, e3)
        return young_terminal_general(q, c3, lam)

    def vectorized(axes: list[np.ndarray]) -> np.ndarray:
        e1 = axes[0][:, None, None, None]
        e2 = axes[1][None, :, None, None]
        e3 = axes[2][None, None, :, None]
        lam = axes[3][None, None, None, :]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            left = gap - e1 - e2
            c1 = (1.0 / e1 + 1.0 + one_q * one_q / e2) / left
            c3 = (one_q * one_q + one_q * e3) * c1 + 1.0 + one_q / e3
            value = (
                np.power(c3, one_q)
                * xpowx(q)
                / (one_q**one_q * np.power(lam, q) * (1.0 - lam))
            )
            value = np.where(left > 0.0, value, np.inf)
        return value.reshape(-1)

    axes = [
        np.geomspace(gap * 1e-4, gap * 0.5, _GRID_POINTS),
        np.geomspace(gap * 1e-4, gap * 0.5, _GRID_POINTS),
        np.geomspace(1e-8, 1e2, _GRID_POINTS),
        np.geomspace(1e-5, 0.9, _GRID_POINTS),
    ]
    seeds = (canonical.eps1, canonical.eps2, canonical.eps3, canonical.lam)
    return _TargetSpec(p, scalar, vectorized, axes, seeds, lam_axis_index=3)


def _holder_spec(p: ParamPoint) -> _TargetSpec:
    gap = gap_or_raise(p)
    q = p.q
    one_q = 1.0 + q
    one_q_sq = one_q * one_q

    def scalar(params: tuple[float, ...]) -> float:
        e1, e2 = params
        return c_holder_general(p, e1, e2)

    def vectorized(axes: list[np.ndarray]) -> np.ndarray:
        e1 = axes[0][:, None]
        e2 = axes[1][None, :]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            left = gap - e1 - e2
            c1 = (1.0 / e1 + 1.0 + one_q_sq / e2) / left
            base = 2.0 * one_q_sq * (one_q_sq * c1 + 1.0)
            value = np.power(base, one_q)
            value = np.where(left > 0.0, value, np.inf)
        return value.reshape(-1)

    axes = [
        np.geomspace(gap * 1e-4, gap * 0.5, _GRID_POINTS),
        np.geomspace(gap * 1e-4, gap * 0.5, _GRID_POINTS),
    ]
    return _TargetSpec(p, scalar, vectorized, axes, (gap / 4.0, gap / 4.0), None)


def _cmc_spec(p: ParamPoint, weight: float) -> _TargetSpec:
    gap = gap_or_raise(p)
    n, q = p.n, p.q
    one_q_sq = (1.0 + q) * (1.0 + q)
    canonical = canonical_cmc_epsilons(p)

    def scalar(params: tuple[float, ...]) -> float:
        c0, b0raw = cmc_general(p, CmcEpsilons(*params))
        return _cmc_objective_value(p, c0, b0raw, weight)

    def vectorized(axes: list[np.ndarray]) -> np.ndarray:
        e1 = axes[0][:, None, None]
        e2 = axes[1][None, :, None]
        e3 = axes[2][None, None, :]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            left = 2.0 / n + 2.0 * q + 1.0 - e1 - (1.0 + e3) * one_q_sq * (1.0 + e2)
            c0 = (one_q_sq / e1 + (1.0 + e3) * one_q_sq * (1.0 + 1.0 / e2)) / left
            value = 2.0**q * np.power(2.0 * one_q_sq * (c0 + 1.0), 1.0 + q)
            if weight > 0.0:
                b0raw = (
                    n * (n - 2) * (n - 2) / (4.0 * (n - 1) * e3) - 2.0 * n - n * e3
                ) / left
                b = np.maximum(0.0, 2.0 * one_q_sq * np.maximum(0.0, b0raw) - n)
                value = value + weight * 2.0**q * np.power(b, 1.0 + q)
            value = np.where(left > 0.0, value, np.inf)
        return value.reshape(-1)

    scale2 = gap / one_q_sq
    axes = [
        np.geomspace(gap * 1e-4, gap * 0.75, _GRID_POINTS),
        np.geomspace(scale2 * 1e-4, scale2 * 0.75, _GRID_POINTS),
        np.geomspace(scale2 * 1e-4, scale2 * 0.75, _GRID_POINTS),
    ]
    seeds = (canonical.eps1, canonical.eps2, canonical.eps3)
    return _TargetSpec(p, scalar, vectorized, axes, seeds, None)


def _to_internal(spec: _TargetSpec, params: tuple[float, ...]) -> list[float]:
    coords = []
    for i, value in enumerate(params):
        if i == spec.lam_axis_index:
            coords.append(math.log(value / (1.0 - value)))
        else:
            coords.append(math.log(value))
    return coords


def _from_internal(spec: _TargetSpec, coords: list[float]) -> tuple[float, ...]:
    params = []
    for i, z in enumerate(coords):
        if i == spec.lam_axis_index:
            params.append(1.0 / (1.0 + math.exp(-z)))
        else:
            params.append(math.exp(z))
    return tuple(params)


def _nelder_mead(fn, x0: list[float], steps: list[float], max_iter: int, rel_tol: float):
    """Deterministic Nelder-Mead; returns (best_x, best_f, evaluations, converged)."""
    dim = len(x0)
    points = [list(x0)]
    for i in range(dim):
        shifted = list(x0)
        shifted[i] += steps[i]
        points.append(shifted)
    values = [fn(pt) for pt in points]
    evaluations = dim + 1
    converged = False

    for _ in range(max_iter):
        order = sorted(range(dim + 1), key=lambda i: (values[i], i))
        points = [points[i] for i in order]
        values = [values[i] for i in order]
        f_best, f_worst = values[0], values[-1]
        if math.isfinite(f_best) and f_worst - f_best <= rel_tol * max(abs(f_best), 1e-300):
            converged = True
            break

        centroid = [
            sum(points[j][i] for j in range(dim)) / dim for i in range(dim)
        ]
        worst = points[-1]
        reflected = [centroid[i] + (centroid[i] - worst[i]) for i in range(dim)]
        f_reflected = fn(reflected)
        evaluations += 1

        if values[0] <= f_reflected < values[-2]:
            points[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[0]:
            expanded = [centroid[i] + 2.0 * (reflected[i] - centroid[i]) for i in range(dim)]
            f_expanded = fn(expanded)
            evaluations += 1
            if f_expanded < f_reflected:
                points[-1], values[-1] = expanded, f_expanded
            else:
                points[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[-1]:
            contracted = [centroid[i] + 0.5 * (reflected[i] - centroid[i]) for i in range(dim)]
            f_contracted = fn(contracted)
            evaluations += 1
            if f_contracted <= f_reflected:
                points[-1], values[-1] = contracted, f_contracted
                continue
        else:
            contracted = [centroid[i] + 0.5 * (worst[i] - centroid[i]) for i in range(dim)]
            f_contracted = fn(contracted)
            evaluations += 1
            if f_contracted < values[-1]:
                points[-1], values[-1] = contracted, f_contracted
                continue
        # Shrink toward the best vertex.
        for j in range(1, dim + 1):
            points[j] = [
                points[0][i] + 0.5 * (points[j][i] - points[0][i]) for i in range(dim)
            ]
            values[j] = fn(points[j])
            evaluations += 1

    order = sorted(range(dim + 1), key=lambda i: (values[i], i))
    best = order[0]
    return points[best], values[best], evaluations, converged


def optimize(
    target: Target,
    p: ParamPoint,
    *,
    weight: float = 0.0,
    max_iterations: int = _MAX_ITERATIONS,
    rel_tol: float = _REL_TOL,
) -> OptimizationResult:
    """Minimize the chosen closure constant over its free absorption parameters.

    Deterministic: a 32-points-per-axis feasible grid (ties toward the
    lexicographically smallest parameter vector) plus the canonical choice
    seed a Nelder-Mead refinement in log space (at most ``max_iterations``
    iterations, relative convergence ``rel_tol``).  ``weight`` only affects
    the CMC target, where it adds ``weight * calC2`` to the objective.
    """
    gap_or_raise(p)
    if target is Target.YOUNG_CY:
        spec = _young_spec(p)
    elif target is Target.HOLDER_CH:
        spec = _holder_spec(p)
    elif target is Target.CMC_CAL_C1:
        spec = _cmc_spec(p, weight)
    else:  # pragma: no cover - exhaustive enum
        raise DomainError(f"unknown optimization target {target!r}")

    flat = spec.vectorized(spec.axes)
    grid_evals = flat.size
    best_index = int(np.argmin(flat))
    unravelled = np.unravel_index(best_index, tuple(len(a) for a in spec.axes))
    grid_params = tuple(float(spec.axes[i][j]) for i, j in enumerate(unravelled))

    paper_value = spec.penalized(spec.canonical_params)
    candidates = [
        (paper_value, spec.canonical_params),
        (spec.penalized(grid_params), grid_params),
    ]
    seed_value, seed_params = min(candidates, key=lambda item: (item[0], item[1]))

    steps = []
    for i, axis in enumerate(spec.axes):
        if i == spec.lam_axis_index:
            steps.append(0.2)
        else:
            steps.append(0.5 * (math.log(axis[-1]) - math.log(axis[0])) / (len(axis) - 1))

    def internal_objective(coords: list[float]) -> float:
        return spec.penalized(_from_internal(spec, coords))

    x0 = _to_internal(spec, seed_params)
    best_coords, nm_value, nm_evals, converged = _nelder_mead(
        internal_objective, x0, steps, max_iterations, rel_tol
    )
    candidates.append((nm_value, _from_internal(spec, best_coords)))

    best_value, best_params = min(candidates, key=lambda item: (item[0], item[1]))
    return OptimizationResult(
        best_params=best_params,
        best_value=best_value,
        paper_value=paper_value,
        improvement_ratio=best_value / paper_value,
        evaluations=grid_evals + nm_evals + 2,
        converged=converged,
    )
