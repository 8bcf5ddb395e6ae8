"""Grid sweeps over the parameter domain with a stable CSV schema.

The CSV layout is fixed: a schema-version comment line, then the header, then
one row per grid point in grid order.  Grid exponents are generated with the
single fused expression ``q_min + k * (q_max - q_min) / (steps - 1)`` so
repeated sweeps are byte-identical and free of accumulation drift.  Points
outside the admissible domain are emitted with a ``domain_error`` status and
empty numeric fields, never dropped.  Numbers are printed with 17 significant
digits so binary64 values round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cmc, minimal
from .errors import DomainError
from .params import ParamPoint, stability_gap

__all__ = ["COLUMNS", "SCHEMA_LINE", "SweepSpec", "ReportRow", "build_row", "iter_rows", "write_csv"]

COLUMNS = (
    "n",
    "q",
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
    "calC1",
    "calC2",
    "status",
)

SCHEMA_LINE = "# schema=curvclose-sweep-v1"

STATUS_OK = "ok"
STATUS_DOMAIN_ERROR = "domain_error"


@dataclass(frozen=True)
class ReportRow:
    """One sweep row; numeric fields are None when status is domain_error."""

    n: int
    q: float
    A: float | None
    C1: float | None
    C3: float | None
    CY: float | None
    C3H: float | None
    CH: float | None
    ratio: float | None
    ratio_root: float | None
    f_bound: float | None
    delta: float | None
    C0: float | None
    B0: float | None
    calC1: float | None
    calC2: float | None
    status: str


@dataclass(frozen=True)
class SweepSpec:
    """A sweep over a q grid for each requested dimension."""

    n_values: tuple[int, ...]
    q_min: float
    q_max: float
    steps: int
    outputs: tuple[str, ...] = COLUMNS

    def __post_init__(self) -> None:
        if not self.n_values:
            raise DomainError("sweep needs at least one dimension")
        if self.steps < 2:
            raise DomainError(f"sweep needs at least 2 steps, got {self.steps}")
        if not self.q_min < self.q_max:
            raise DomainError(f"sweep needs q_min < q_max, got [{self.q_min}, {self.q_max}]")
        unknown = [name for name in self.outputs if name not in COLUMNS]
        if unknown:
            raise DomainError(f"unknown output columns: {unknown}")

    def q_value(self, k: int) -> float:
        return self.q_min + k * (self.q_max - self.q_min) / (self.steps - 1)


def build_row(n: int, q: float) -> ReportRow:
    """Evaluate one grid point, mapping domain violations to a marker row."""
    empty = dict.fromkeys(
        (
            "A", "C1", "C3", "CY", "C3H", "CH", "ratio", "ratio_root",
            "f_bound", "delta", "C0", "B0", "calC1", "calC2",
        )
    )
    if q < 0.0 or stability_gap(ParamPoint(n, max(q, 0.0))) <= 0.0:
        return ReportRow(n=n, q=q, status=STATUS_DOMAIN_ERROR, **empty)
    p = ParamPoint(n, q)
    bundle = minimal.constant_bundle(p)
    cmc_values = cmc.cmc_bundle(p)
    return ReportRow(
        n=n,
        q=q,
        A=bundle.A,
        C1=bundle.C1,
        C3=bundle.C3,
        CY=bundle.CY,
        C3H=bundle.C3H,
        CH=bundle.CH,
        ratio=bundle.ratio,
        ratio_root=bundle.ratio_root,
        f_bound=minimal._f_bound_extended(q),
        delta=cmc_values.delta,
        C0=cmc_values.C0,
        B0=cmc_values.B0,
        calC1=cmc_values.calC1,
        calC2=cmc_values.calC2,
        status=STATUS_OK,
    )


def iter_rows(spec: SweepSpec):
    """Rows in grid order: dimensions as given, exponents ascending."""
    for n in spec.n_values:
        for k in range(spec.steps):
            yield build_row(n, spec.q_value(k))


def _format_cell(name: str, row: ReportRow) -> str:
    value = getattr(row, name)
    if name == "n":
        return str(value)
    if name == "status":
        return value
    if value is None:
        return ""
    return format(value, ".17g")


def render_csv(spec: SweepSpec) -> str:
    """The full CSV document as a string (deterministic for a fixed spec)."""
    lines = [SCHEMA_LINE, ",".join(spec.outputs)]
    for row in iter_rows(spec):
        lines.append(",".join(_format_cell(name, row) for name in spec.outputs))
    return "\n".join(lines) + "\n"


def write_csv(spec: SweepSpec, path: str) -> None:
    """Write the sweep to ``path`` as UTF-8 CSV with LF line endings."""
    document = render_csv(spec)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(document)
