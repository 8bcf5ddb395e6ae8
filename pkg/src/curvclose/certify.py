"""Machine-checkable certificates for sign and comparison claims.

The certifier re-expresses the constant formulas in sound interval arithmetic
(see ``interval``) and proves strict-sign claims over parameter boxes by
adaptive bisection in the exponent q.  The integer dimension n is never
subdivided continuously: boxes carry a finite set of n values and
certification iterates over it.

A claim is *Proven* when every leaf box has a strictly positive enclosure,
*Disproven* when some point evaluation has a guaranteed negative upper bound
(the point is reported as witness), and *Inconclusive* only when the depth
budget is exhausted (diagnostics identify the offending box).  Processing is
single-pass depth-first in a fixed order, so certificates are reproducible
bit for bit.

Registered value functions: the stability gap, the derivative of the log of
the comparison bound f, f itself, the (1+q)-th-root ratio form, and both
terminal constants.  Comparison claims are certified as positivity of the
difference.  Near q = 0 the enclosure of ``-log q`` blows up, so certified
ranges conventionally start at a small positive q (the CLI default is 1e-3);
the behaviour on (0, q_min) is covered by the limit statements of the scalar
module, not by certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

from .errors import DomainError, PreconditionError
from .interval import Interval, iexp, ilog, ipow, isquare, ixpowx

__all__ = [
    "ClaimStatus",
    "ParameterBox",
    "Certificate",
    "registered_functions",
    "interval_eval",
    "certify_positive",
    "certify_less",
    "isolate_root",
    "certify_named_claim",
    "NAMED_CLAIMS",
    "DEFAULT_MAX_DEPTH",
]

DEFAULT_MAX_DEPTH = 40


class ClaimStatus(Enum):
    PROVEN = "Proven"
    DISPROVEN = "Disproven"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ParameterBox:
    """A finite set of dimensions crossed with one exponent interval."""

    n_values: tuple[int, ...]
    q: Interval

    def __post_init__(self) -> None:
        for n in self.n_values:
            if isinstance(n, bool) or not isinstance(n, int) or n < 2:
                raise DomainError(f"dimension values must be integers >= 2, got {n!r}")


@dataclass(frozen=True)
class Certificate:
    """Outcome of a certification attempt over a parameter box."""

    claim: str
    box: ParameterBox
    status: ClaimStatus
    witness: tuple[int | None, float] | None
    subdivisions: int
    max_depth_reached: int
    diagnostics: str = ""


# ---------------------------------------------------------------------------
# Registered interval evaluations
# ---------------------------------------------------------------------------


def _ival_gap(n: int | None, q: Interval) -> Interval:
    return Interval.point(2.0) / float(n) - isquare(q)


def _ival_g_prime(n: int | None, q: Interval) -> Interval:
    one_q = q + 1.0
    return (
        4.0 / one_q
        - 1.0 / (q + 2.0)
        - ilog(q) / isquare(one_q)
        - 1.0 / one_q
    )


def _frac_power(q: Interval) -> Interval:
    # q^(q/(1+q)) for q > 0
    return iexp(q / (q + 1.0) * ilog(q))


def _ival_f_bound(n: int | None, q: Interval) -> Interval:
    one_q = q + 1.0
    return isquare(isquare(one_q)) / (_frac_power(q) * (q + 2.0))


def _ival_c1(n: int, q: Interval) -> Interval:
    gap = _ival_gap(n, q)
    aux = isquare(q) + q * 2.0 + 2.0
    return 2.0 / gap + aux * 8.0 / isquare(gap)


def _ival_d_factor(n: int, q: Interval) -> Interval:
    gap = _ival_gap(n, q)
    one_q = q + 1.0
    aux = isquare(q) + q * 2.0 + 2.0
    return 1.0 + one_q * 2.0 / gap + one_q * aux * 8.0 / isquare(gap)


def _ival_c_young(n: int, q: Interval) -> Interval:
    one_q = q + 1.0
    prefactor = ipow(Interval.point(2.0), one_q) * ixpowx(q) / ipow(one_q, one_q)
    c3 = (q + 2.0) * (one_q * _ival_c1(n, q) + 1.0)
    return prefactor * ipow(c3, one_q)


def _ival_c_holder(n: int, q: Interval) -> Interval:
    one_q = q + 1.0
    sq = isquare(one_q)
    base = sq * 2.0 * (sq * _ival_c1(n, q) + 1.0)
    return ipow(base, one_q)


def _ival_ratio_root(n: int, q: Interval) -> Interval:
    one_q = q + 1.0
    d = _ival_d_factor(n, q)
    lead = isquare(one_q) * one_q / (_frac_power(q) * (q + 2.0))
    return lead * (1.0 + q * (d - 1.0) / d)


def _ival_one(n: int | None, q: Interval) -> Interval:
    return Interval.point(1.0)


@dataclass(frozen=True)
class _ClaimFunction:
    id: str
    uses_n: bool
    evaluate: Callable[[int | None, Interval], Interval]


_REGISTRY: dict[str, _ClaimFunction] = {}


def _register(fn_id: str, uses_n: bool, evaluate) -> None:
    _REGISTRY[fn_id] = _ClaimFunction(fn_id, uses_n, evaluate)


_register("gap", True, _ival_gap)
_register("g-prime", False, _ival_g_prime)
_register("f-bound", False, _ival_f_bound)
_register("ratio-root", True, _ival_ratio_root)
_register("c-young", True, _ival_c_young)
_register("c-holder", True, _ival_c_holder)
_register("one", False, _ival_one)
_register("f-minus-one", False, lambda n, q: _ival_f_bound(n, q) - 1.0)
_register(
    "young-minus-holder", True, lambda n, q: _ival_c_young(n, q) - _ival_c_holder(n, q)
)
_register(
    "f-minus-ratio-root", True, lambda n, q: _ival_f_bound(n, q) - _ival_ratio_root(n, q)
)


def registered_functions() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def _lookup(fn_id: str) -> _ClaimFunction:
    try:
        return _REGISTRY[fn_id]
    except KeyError:
        raise DomainError(
            f"unknown claim function {fn_id!r}; registered: {', '.join(sorted(_REGISTRY))}"
        ) from None


def interval_eval(claim_fn: str, box: ParameterBox) -> Interval:
    """Sound enclosure of a registered function's range over ``box``.

    For n-dependent functions the result is the hull over the box's n set.
    ``DomainError`` from a singular sub-box (for example a gap interval
    containing zero under a division) is propagated, not widened away.
    """
    fn = _lookup(claim_fn)
    n_values: tuple[int | None, ...] = box.n_values if fn.uses_n else (None,)
    if fn.uses_n and not box.n_values:
        raise DomainError(f"claim function {claim_fn!r} requires at least one n value")
    lo = hi = None
    for n in n_values:
        enclosure = fn.evaluate(n, box.q)
        lo = enclosure.lo if lo is None else min(lo, enclosure.lo)
        hi = enclosure.hi if hi is None else max(hi, enclosure.hi)
    return Interval(lo, hi)


# ---------------------------------------------------------------------------
# Certification engine
# ---------------------------------------------------------------------------


def _certify_sign(
    claim: str,
    evaluate: Callable[[int | None, Interval], Interval],
    uses_n: bool,
    box: ParameterBox,
    max_depth: int,
) -> Certificate:
    n_values: tuple[int | None, ...] = box.n_values if uses_n else (None,)
    if uses_n and not box.n_values:
        raise DomainError(f"claim {claim!r} requires at least one n value")

    subdivisions = 0
    deepest = 0
    for n in n_values:
        stack: list[tuple[Interval, int]] = [(box.q, 0)]
        while stack:
            qiv, depth = stack.pop()
            deepest = max(deepest, depth)
            enclosure = None
            failure = ""
            try:
                enclosure = evaluate(n, qiv)
            except DomainError as exc:
                failure = str(exc)
            if enclosure is not None and enclosure.lo > 0.0:
                continue

            mid = qiv.mid
            try:
                point_value = evaluate(n, Interval.point(mid))
                if point_value.hi < 0.0:
                    return Certificate(
                        claim=claim,
                        box=box,
                        status=ClaimStatus.DISPROVEN,
                        witness=(n, mid),
                        subdivisions=subdivisions,
                        max_depth_reached=deepest,
                        diagnostics=(
                            f"guaranteed upper bound {point_value.hi} < 0 "
                            f"at q={mid!r}" + (f", n={n}" if n is not None else "")
                        ),
                    )
            except DomainError:
                pass

            splittable = qiv.lo < mid < qiv.hi
            if depth >= max_depth or not splittable:
                detail = failure or (
                    f"enclosure [{enclosure.lo}, {enclosure.hi}] not strictly positive"
                    if enclosure is not None
                    else "no enclosure"
                )
                return Certificate(
                    claim=claim,
                    box=box,
                    status=ClaimStatus.INCONCLUSIVE,
                    witness=None,
                    subdivisions=subdivisions,
                    max_depth_reached=deepest,
                    diagnostics=(
                        f"budget exhausted on q=[{qiv.lo!r}, {qiv.hi!r}]"
                        + (f", n={n}" if n is not None else "")
                        + f" at depth {depth}: {detail}"
                    ),
                )
            subdivisions += 1
            stack.append((Interval(mid, qiv.hi), depth + 1))
            stack.append((Interval(qiv.lo, mid), depth + 1))

    return Certificate(
        claim=claim,
        box=box,
        status=ClaimStatus.PROVEN,
        witness=None,
        subdivisions=subdivisions,
        max_depth_reached=deepest,
    )


def certify_positive(
    claim_fn: str, box: ParameterBox, max_depth: int = DEFAULT_MAX_DEPTH
) -> Certificate:
    """Certify ``claim_fn > 0`` over ``box`` by adaptive bisection in q."""
    fn = _lookup(claim_fn)
    return _certify_sign(f"{claim_fn}>0", fn.evaluate, fn.uses_n, box, max_depth)


def certify_less(
    fn_a: str, fn_b: str, box: ParameterBox, max_depth: int = DEFAULT_MAX_DEPTH
) -> Certificate:
    """Certify ``fn_a < fn_b`` over ``box`` via positivity of the difference."""
    a = _lookup(fn_a)
    b = _lookup(fn_b)

    def difference(n: int | None, q: Interval) -> Interval:
        return b.evaluate(n, q) - a.evaluate(n, q)

    return _certify_sign(f"{fn_a}<{fn_b}", difference, a.uses_n or b.uses_n, box, max_depth)


def _certified_sign(fn: _ClaimFunction, n: int | None, q: float) -> int:
    enclosure = fn.evaluate(n, Interval.point(q))
    if enclosure.lo > 0.0:
        return 1
    if enclosure.hi < 0.0:
        return -1
    return 0


# Deterministic probe offsets (fractions of the current bracket) tried when a
# midpoint sign cannot be certified.
_PROBE_FRACTIONS = (0.5, 0.4921875, 0.5078125, 0.484375, 0.515625)


def isolate_root(
    fn: str, interval: Interval, tol: float, n: int | None = None
) -> Interval:
    """Shrink a certified sign-change bracket of ``fn`` to width <= ``tol``.

    Requires certified opposite signs at the endpoints (``PreconditionError``
    otherwise).  Midpoints whose sign cannot be certified are replaced by
    nearby deterministic probes; the bracket endpoints always retain certified
    opposite signs, so the result encloses a sign change.
    """
    claim_fn = _lookup(fn)
    if not tol > 0.0:
        raise PreconditionError(f"tolerance must be positive, got {tol}")
    a, b = interval.lo, interval.hi
    sign_a = _certified_sign(claim_fn, n, a)
    sign_b = _certified_sign(claim_fn, n, b)
    if sign_a == 0 or sign_b == 0 or sign_a == sign_b:
        raise PreconditionError(
            f"endpoint signs of {fn!r} on [{a}, {b}] are not certified opposite "
            f"(got {sign_a} and {sign_b})"
        )

    while b - a > tol:
        probe = None
        probe_sign = 0
        for fraction in _PROBE_FRACTIONS:
            candidate = a + fraction * (b - a)
            if not a < candidate < b:
                continue
            candidate_sign = _certified_sign(claim_fn, n, candidate)
            if candidate_sign != 0:
                probe, probe_sign = candidate, candidate_sign
                break
        if probe is None:
            raise PreconditionError(
                f"cannot certify a sign for {fn!r} anywhere near the midpoint of "
                f"[{a}, {b}]; root too close to an evaluation plateau"
            )
        if probe_sign == sign_a:
            a = probe
        else:
            b = probe
    return Interval(a, b)


# ---------------------------------------------------------------------------
# Named claims exposed on the command line
# ---------------------------------------------------------------------------


def _claim_gap_positive(box: ParameterBox, max_depth: int) -> Certificate:
    return certify_positive("gap", box, max_depth)


def _claim_f_monotone(box: ParameterBox, max_depth: int) -> Certificate:
    return certify_positive("g-prime", box, max_depth)


def _claim_holder_beats_young(box: ParameterBox, max_depth: int) -> Certificate:
    return certify_less("c-holder", "c-young", box, max_depth)


def _claim_f_below_one(box: ParameterBox, max_depth: int) -> Certificate:
    return certify_less("f-bound", "one", box, max_depth)


def _claim_ratio_bound(box: ParameterBox, max_depth: int) -> Certificate:
    return certify_less("ratio-root", "f-bound", box, max_depth)


NAMED_CLAIMS: dict[str, Callable[[ParameterBox, int], Certificate]] = {
    "gap-positive": _claim_gap_positive,
    "f-monotone": _claim_f_monotone,
    "holder-beats-young": _claim_holder_beats_young,
    "f-below-one": _claim_f_below_one,
    "ratio-bound": _claim_ratio_bound,
}


def certify_named_claim(
    name: str, box: ParameterBox, max_depth: int = DEFAULT_MAX_DEPTH
) -> Certificate:
    try:
        runner = NAMED_CLAIMS[name]
    except KeyError:
        raise DomainError(
            f"unknown claim {name!r}; available: {', '.join(sorted(NAMED_CLAIMS))}"
        ) from None
    return replace(runner(box, max_depth), claim=name)
