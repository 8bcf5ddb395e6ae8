"""Parameter domain for the closure-constant family.

Every constant in this library is a function of an integer hypersurface
dimension ``n >= 2`` and a stability exponent ``q``.  The admissible range of
the exponent is the open interval ``(0, sqrt(2/n))``; its width is governed by
the stability gap

    A(n, q) = 2/n - q^2,

which is positive exactly on that range and enters every closure constant
through ``1/A`` and ``1/A^2`` terms.  ``q = 0`` is admitted throughout as the
continuous extension of the open domain, because several limit statements
require evaluation arbitrarily close to zero.

This module also houses the auxiliary scalar functions ``B(q) = q^2 + 2q + 2``
and ``D(n, q)``, the structural coefficients of the traceless second
fundamental form (cubic-trace and refined-Kato factors), and the admissible
exponent range of the Bernstein decay argument.

All functions here are pure and deterministic; they share no mutable state and
are safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "ParamPoint",
    "QInterval",
    "StructuralCoefficients",
    "stability_gap",
    "quadratic_aux",
    "d_factor",
    "structural_coefficients",
    "admissible_q_domain",
    "bernstein_range",
    "decay_exponent",
    "gap_or_raise",
]


@dataclass(frozen=True)
class ParamPoint:
    """A (dimension, stability exponent) pair.

    Invariants enforced at construction: ``n`` is an integer ``>= 2`` and
    ``q`` is a finite real ``>= 0``.  Whether ``q`` lies below the singular
    boundary ``sqrt(2/n)`` is checked by the individual operations, because
    some quantities (``stability_gap``, ``decay_exponent``) remain meaningful
    beyond it.
    """

    n: int
    q: float

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise DomainError(f"dimension n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise DomainError(f"dimension n must be >= 2, got {self.n}")
        q = float(self.q)
        if not math.isfinite(q):
            raise DomainError(f"stability exponent q must be finite, got {q!r}")
        if q < 0.0:
            raise DomainError(f"stability exponent q must be >= 0, got {q}")
        object.__setattr__(self, "q", q)

    @property
    def boundary_q(self) -> float:
        """The singular exponent ``sqrt(2/n)`` where the stability gap vanishes."""
        return math.sqrt(2.0 / self.n)


@dataclass(frozen=True)
class QInterval:
    """An interval of stability exponents, with explicit openness flags.

    Empty intervals carry a dedicated ``empty`` flag and no endpoint
    semantics; the endpoint fields of an empty interval are zeroed and must
    not be interpreted.
    """

    lower: float
    upper: float
    lower_open: bool = True
    upper_open: bool = True
    empty: bool = False

    def __post_init__(self) -> None:
        if self.empty:
            return
        if not (self.lower < self.upper):
            raise DomainError(
                f"nonempty interval requires lower < upper, got [{self.lower}, {self.upper}]"
            )

    @classmethod
    def open(cls, lower: float, upper: float) -> "QInterval":
        return cls(lower, upper, lower_open=True, upper_open=True)

    @classmethod
    def closed(cls, lower: float, upper: float) -> "QInterval":
        return cls(lower, upper, lower_open=False, upper_open=False)

    @classmethod
    def make_empty(cls) -> "QInterval":
        return cls(0.0, 0.0, empty=True)

    @property
    def width(self) -> float:
        return 0.0 if self.empty else self.upper - self.lower

    def contains(self, q: float) -> bool:
        if self.empty:
            return False
        above = q > self.lower if self.lower_open else q >= self.lower
        below = q < self.upper if self.upper_open else q <= self.upper
        return above and below


@dataclass(frozen=True)
class StructuralCoefficients:
    """Scalar coefficients of the traceless-tensor inequalities in dimension n.

    ``alpha`` multiplies the cubic term of the curvature inequality,
    ``okumura`` bounds the cubic trace (``alpha = n * okumura``), and
    ``kato`` is the gradient-improvement factor ``1 + 2/n``.
    """

    alpha: float
    okumura: float
    kato: float


def stability_gap(p: ParamPoint) -> float:
    """Return ``A(n, q) = 2/n - q^2``.

    Positive exactly when ``q < sqrt(2/n)``.  Negative values are returned
    as-is; domain enforcement happens in the callers that need ``A > 0``.
    """
    return 2.0 / p.n - p.q * p.q


def gap_or_raise(p: ParamPoint) -> float:
    """Return the stability gap, raising ``DomainError`` when it is not positive."""
    gap = stability_gap(p)
    if not gap > 0.0:
        raise DomainError(
            f"stability gap A(n={p.n}, q={p.q}) = {gap} <= 0; "
            f"requires q < sqrt(2/{p.n}) = {p.boundary_q}"
        )
    return gap


def quadratic_aux(q: float) -> float:
    """Return ``B(q) = q^2 + 2q + 2`` (always >= 2 for q >= 0)."""
    return q * q + 2.0 * q + 2.0


def d_factor(p: ParamPoint) -> float:
    """Return ``D(n, q) = 1 + 2(1+q)/A + 8(1+q)B(q)/A^2``.

    Strictly greater than 1 on the admissible domain; raises ``DomainError``
    when the stability gap is not positive.
    """
    gap = gap_or_raise(p)
    q = p.q
    return 1.0 + 2.0 * (1.0 + q) / gap + 8.0 * (1.0 + q) * quadratic_aux(q) / (gap * gap)


def structural_coefficients(n: int) -> StructuralCoefficients:
    """Return the structural coefficients for dimension ``n >= 2``.

    ``alpha = n(n-2)/sqrt(n(n-1))``, ``okumura = (n-2)/sqrt(n(n-1))`` and
    ``kato = 1 + 2/n``.  At ``n = 2`` the first two vanish.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    root = math.sqrt(n * (n - 1))
    okumura = (n - 2) / root
    return StructuralCoefficients(alpha=n * okumura, okumura=okumura, kato=1.0 + 2.0 / n)


def admissible_q_domain(n: int) -> QInterval:
    """Return the open admissible exponent range ``(0, sqrt(2/n))``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    return QInterval.open(0.0, math.sqrt(2.0 / n))


def bernstein_range(n: int) -> QInterval:
    """Return the exponent range on which the Bernstein decay argument closes.

    The decay step needs ``2 + 2q > n - 2``, i.e. ``q > (n-4)/2``, on top of
    admissibility ``0 < q < sqrt(2/n)``.  The result is the open interval
    ``(max(0, (n-4)/2), sqrt(2/n))``, which is empty for n >= 6.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    lower = max(0.0, (n - 4) / 2.0)
    upper = math.sqrt(2.0 / n)
    if lower >= upper:
        return QInterval.make_empty()
    return QInterval.open(lower, upper)


def decay_exponent(p: ParamPoint) -> float:
    """Return ``n - 4 - 2q``, the power of the outer radius in the decay step.

    Negative values mean the curvature integral over growing balls decays to
    zero, closing the Bernstein argument.
    """
    return p.n - 4.0 - 2.0 * p.q
