"""Command-line front end.

Subcommands: eval, sweep, compare, certify, optimize, cmc, bernstein,
oracle-check.  All configuration is taken from flags (no environment
variables), every command is deterministic, and numbers are printed with 17
significant digits so binary64 values round-trip.

Exit codes: 0 success or Proven, 1 usage or domain error, 2 certification
failure or tolerance breach, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import cmc, epsilons, minimal, oracle, sweep
from .certify import (
    DEFAULT_MAX_DEPTH,
    Certificate,
    ClaimStatus,
    NAMED_CLAIMS,
    ParameterBox,
    certify_named_claim,
)
from .errors import DomainError, FeasibilityError, PreconditionError
from .interval import Interval
from .params import ParamPoint, QInterval, admissible_q_domain, bernstein_range, decay_exponent

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERTIFICATION = 2
EXIT_IO = 3

CERTIFICATE_SCHEMA_LINE = "# schema=curvclose-certificate-v1"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _parse_n_spec(text: str) -> tuple[int, ...]:
    """Parse a dimension spec: single ``3``, list ``3,5,7``, or range ``2..12``."""
    text = text.strip()
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        return (int(text),)
    except ValueError:
        raise _UsageError(f"cannot parse dimension spec {text!r}") from None


def _parse_q_range(text: str) -> tuple[float, float]:
    """Parse an exponent range ``a..b`` (a single value makes a point box)."""
    text = text.strip()
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = float(lo_text), float(hi_text)
        else:
            lo = hi = float(text)
    except ValueError:
        raise _UsageError(f"cannot parse exponent range {text!r}") from None
    if hi < lo:
        raise _UsageError(f"empty exponent range {text!r}")
    return lo, hi


def _format_q_interval(interval: QInterval) -> str:
    if interval.empty:
        return "empty"
    left = "(" if interval.lower_open else "["
    right = ")" if interval.upper_open else "]"
    return f"{left}{_fmt(interval.lower)}, {_fmt(interval.upper)}{right}"


def _emit(pairs: list[tuple[str, str]], fmt: str) -> None:
    if fmt == "structured":
        for key, value in pairs:
            print(f"{key}={value}")
    else:
        width = max(len(key) for key, _ in pairs)
        for key, value in pairs:
            print(f"{key.ljust(width)}  {value}")


def format_certificate(cert: Certificate) -> str:
    """Stable text document schema for certificates."""
    n_text = ",".join(str(n) for n in cert.box.n_values) if cert.box.n_values else "-"
    witness = (
        f"n={cert.witness[0] if cert.witness[0] is not None else '-'},q={_fmt(cert.witness[1])}"
        if cert.witness
        else "-"
    )
    lines = [
        CERTIFICATE_SCHEMA_LINE,
        f"claim: {cert.claim}",
        f"n: {n_text}",
        f"q: [{_fmt(cert.box.q.lo)}, {_fmt(cert.box.q.hi)}]",
        f"status: {cert.status.value}",
        f"witness: {witness}",
        f"subdivisions: {cert.subdivisions}",
        f"max_depth_reached: {cert.max_depth_reached}",
        f"diagnostics: {cert.diagnostics or '-'}",
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    p = ParamPoint(args.n, args.q)
    if args.format == "csv":
        row = sweep.build_row(p.n, p.q)
        print(sweep.SCHEMA_LINE)
        print(",".join(sweep.COLUMNS))
        print(",".join(sweep._format_cell(name, row) for name in sweep.COLUMNS))
        return EXIT_OK
    bundle = minimal.constant_bundle(p)
    cmc_values = cmc.cmc_bundle(p)
    pairs: list[tuple[str, str]] = [
        ("n", str(p.n)),
        ("q", _fmt(p.q)),
        ("A", _fmt(bundle.A)),
        ("C1", _fmt(bundle.C1)),
        ("C3", _fmt(bundle.C3)),
        ("CY", _fmt(bundle.CY)),
        ("C3H", _fmt(bundle.C3H)),
        ("CH", _fmt(bundle.CH)),
        ("ratio", _fmt(bundle.ratio)),
        ("ratio_root", _fmt(bundle.ratio_root)),
        ("f_bound", _fmt(minimal._f_bound_extended(p.q))),
        ("CH_lt_CY", "true" if bundle.CH < bundle.CY else "false"),
        ("delta", _fmt(cmc_values.delta)),
        ("C0", _fmt(cmc_values.C0)),
        ("B0", _fmt(cmc_values.B0)),
        ("B0_raw", _fmt(cmc_values.B0_raw)),
        ("a", _fmt(cmc_values.a)),
        ("b", _fmt(cmc_values.b)),
        ("calC1", _fmt(cmc_values.calC1)),
        ("calC2", _fmt(cmc_values.calC2)),
    ]
    if args.H is not None:
        if args.R is None or args.theta is None:
            raise _UsageError("--H requires --R and --theta")
        scale = cmc.CmcScale(H=args.H, R=args.R, theta=args.theta)
        estimate = cmc.local_estimate(p, scale)
        pairs.extend(
            [
                ("H", _fmt(scale.H)),
                ("R", _fmt(scale.R)),
                ("theta", _fmt(scale.theta)),
                ("gradient_coefficient", _fmt(estimate.gradient_coefficient)),
                ("curvature_coefficient", _fmt(estimate.curvature_coefficient)),
                ("combined_small_scale", _fmt(estimate.combined_small_scale)),
                ("regime", estimate.regime.value),
                ("threshold_radius", _fmt(cmc.threshold_radius(scale.H, scale.theta))),
            ]
        )
    _emit(pairs, args.format)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = sweep.SweepSpec(
        n_values=_parse_n_spec(args.n),
        q_min=args.q_min,
        q_max=args.q_max,
        steps=args.steps,
    )
    sweep.write_csv(spec, args.out)
    print(f"wrote {spec.steps * len(spec.n_values)} rows to {args.out}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    n_values = _parse_n_spec(args.n)
    for n in n_values:
        print(f"n={n}")
        for k in range(args.steps):
            q = args.q_min + k * (args.q_max - args.q_min) / (args.steps - 1)
            p = ParamPoint(n, q)
            bundle = minimal.constant_bundle(p)
            marker = "CH<CY" if bundle.CH < bundle.CY else "CH>=CY"
            print(
                f"  q={_fmt(q)} CY={_fmt(bundle.CY)} CH={_fmt(bundle.CH)} "
                f"ratio={_fmt(bundle.ratio)} {marker}"
            )
        bracket = minimal.crossover_q(n)
        if bracket.empty:
            print("  crossover: none below the singular boundary")
        else:
            print(f"  crossover: q in {_format_q_interval(bracket)}")
    return EXIT_OK


def _cmd_certify(args) -> int:
    if args.claim not in NAMED_CLAIMS:
        raise _UsageError(
            f"unknown claim {args.claim!r}; available: {', '.join(sorted(NAMED_CLAIMS))}"
        )
    q_lo, q_hi = _parse_q_range(args.q)
    n_values = _parse_n_spec(args.n) if args.n else ()
    box = ParameterBox(n_values=n_values, q=Interval(q_lo, q_hi))
    cert = certify_named_claim(args.claim, box, args.max_depth)
    document = format_certificate(cert)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(document)
    print(document, end="")
    return EXIT_OK if cert.status is ClaimStatus.PROVEN else EXIT_CERTIFICATION


_TARGETS = {
    "young": epsilons.Target.YOUNG_CY,
    "holder": epsilons.Target.HOLDER_CH,
    "cmc": epsilons.Target.CMC_CAL_C1,
}


def _cmd_optimize(args) -> int:
    p = ParamPoint(args.n, args.q)
    result = epsilons.optimize(_TARGETS[args.target], p, weight=args.weight)
    pairs = [
        ("target", args.target),
        ("n", str(p.n)),
        ("q", _fmt(p.q)),
        ("paper_value", _fmt(result.paper_value)),
        ("best_value", _fmt(result.best_value)),
        ("improvement_ratio", _fmt(result.improvement_ratio)),
        ("best_params", ",".join(_fmt(v) for v in result.best_params)),
        ("evaluations", str(result.evaluations)),
        ("converged", "true" if result.converged else "false"),
    ]
    _emit(pairs, args.format)
    return EXIT_OK


def _cmd_cmc(args) -> int:
    p = ParamPoint(args.n, args.q)
    scale = cmc.CmcScale(H=args.H, R=args.R, theta=args.theta)
    bundle = cmc.cmc_bundle(p)
    estimate = cmc.local_estimate(p, scale)
    pairs = [
        ("n", str(p.n)),
        ("q", _fmt(p.q)),
        ("delta", _fmt(bundle.delta)),
        ("C0", _fmt(bundle.C0)),
        ("B0", _fmt(bundle.B0)),
        ("B0_raw", _fmt(bundle.B0_raw)),
        ("a", _fmt(bundle.a)),
        ("b", _fmt(bundle.b)),
        ("calC1", _fmt(bundle.calC1)),
        ("calC2", _fmt(bundle.calC2)),
        ("H", _fmt(scale.H)),
        ("R", _fmt(scale.R)),
        ("theta", _fmt(scale.theta)),
        ("transition_width", _fmt(scale.transition_width)),
        ("threshold_radius", _fmt(cmc.threshold_radius(scale.H, scale.theta))),
        ("gradient_coefficient", _fmt(estimate.gradient_coefficient)),
        ("curvature_coefficient", _fmt(estimate.curvature_coefficient)),
        ("combined_small_scale", _fmt(estimate.combined_small_scale)),
        ("regime", estimate.regime.value),
    ]
    _emit(pairs, args.format)
    return EXIT_OK


def _cmd_bernstein(args) -> int:
    for n in _parse_n_spec(args.n):
        admissible = admissible_q_domain(n)
        decay_range = bernstein_range(n)
        line = (
            f"n={n} admissible={_format_q_interval(admissible)} "
            f"bernstein={_format_q_interval(decay_range)}"
        )
        if not decay_range.empty:
            q_mid = 0.5 * (decay_range.lower + decay_range.upper)
            line += f" decay_exponent(mid)={_fmt(decay_exponent(ParamPoint(n, q_mid)))}"
        print(line)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    if args.n:
        n_values = _parse_n_spec(args.n)
        if not n_values or args.steps < 2:
            raise _UsageError("oracle-check needs at least one dimension and two steps")
        points = oracle.default_grid(n_values=n_values, steps=args.steps)
    else:
        points = oracle.default_grid()
    report = oracle.run_check(points)
    strict_count = sum(1 for c in report.comparisons if not c.near_boundary)
    boundary_count = len(report.comparisons) - strict_count
    print(f"points checked      {len(report.comparisons)}")
    print(f"interior points     {strict_count} (max deviation {_fmt(report.max_strict)})")
    print(f"near-boundary       {boundary_count} (max deviation {_fmt(report.max_boundary)})")
    print(f"interior tolerance  {_fmt(oracle.STRICT_TOLERANCE)}")
    print(f"boundary tolerance  {_fmt(oracle.BOUNDARY_TOLERANCE)}")
    worst = max(report.comparisons, key=lambda c: c.max_deviation)
    print(
        f"worst point         n={worst.n} q={_fmt(worst.q)} field={worst.worst_field} "
        f"deviation={_fmt(worst.max_deviation)}"
    )
    if not report.passed:
        print("status              FAIL")
        return EXIT_CERTIFICATION
    print("status              ok")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="curvclose",
        description=(
            "Evaluate, optimize, and certify the closure constants of "
            "stability-based curvature estimates. Lengths are unit-free: "
            "R and 1/|H| must be supplied in the same unit."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p) -> None:
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p_eval = sub.add_parser("eval", help="evaluate every constant at one point")
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument("--q", type=float, required=True)
    p_eval.add_argument("--H", type=float, default=None, help="mean curvature (optional)")
    p_eval.add_argument("--R", type=float, default=None, help="ball radius (with --H)")
    p_eval.add_argument("--theta", type=float, default=None, help="interior fraction (with --H)")
    p_eval.add_argument("--format", choices=("text", "structured", "csv"), default="text")
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser("sweep", help="write a CSV sweep over a q grid")
    p_sweep.add_argument("--n", required=True, help="dimension spec: 3, 3,5, or 2..12")
    p_sweep.add_argument("--q-min", type=float, required=True)
    p_sweep.add_argument("--q-max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_compare = sub.add_parser("compare", help="compare the two terminal constants")
    p_compare.add_argument("--n", required=True, help="dimension spec")
    p_compare.add_argument("--q-min", type=float, default=1e-3)
    p_compare.add_argument("--q-max", type=float, default=0.125)
    p_compare.add_argument("--steps", type=int, default=6)
    p_compare.set_defaults(func=_cmd_compare)

    p_certify = sub.add_parser("certify", help="produce an interval certificate")
    p_certify.add_argument("claim", help=f"one of: {', '.join(sorted(NAMED_CLAIMS))}")
    p_certify.add_argument("--n", default=None, help="dimension spec (n-dependent claims)")
    p_certify.add_argument("--q", required=True, help="exponent range a..b")
    p_certify.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p_certify.add_argument("--out", default=None, help="also write the certificate here")
    p_certify.set_defaults(func=_cmd_certify)

    p_opt = sub.add_parser("optimize", help="minimize a constant over its free parameters")
    p_opt.add_argument("target", choices=sorted(_TARGETS))
    p_opt.add_argument("--n", type=int, required=True)
    p_opt.add_argument("--q", type=float, required=True)
    p_opt.add_argument("--weight", type=float, default=0.0, help="weight of calC2 (cmc target)")
    add_format(p_opt)
    p_opt.set_defaults(func=_cmd_optimize)

    p_cmc = sub.add_parser("cmc", help="CMC constants and regime on one ball")
    p_cmc.add_argument("--n", type=int, required=True)
    p_cmc.add_argument("--q", type=float, required=True)
    p_cmc.add_argument("--H", type=float, required=True)
    p_cmc.add_argument("--R", type=float, required=True)
    p_cmc.add_argument("--theta", type=float, required=True)
    add_format(p_cmc)
    p_cmc.set_defaults(func=_cmd_cmc)

    p_bern = sub.add_parser("bernstein", help="admissible decay ranges per dimension")
    p_bern.add_argument("--n", required=True, help="dimension spec")
    p_bern.set_defaults(func=_cmd_bernstein)

    p_oracle = sub.add_parser("oracle-check", help="binary64 vs extended-precision cross-check")
    p_oracle.add_argument("--n", default=None, help="dimension spec (default: built-in grid)")
    p_oracle.add_argument("--steps", type=int, default=21)
    p_oracle.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, FeasibilityError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
