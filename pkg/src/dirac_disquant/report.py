"""Check records, verification reports, and deterministic serialization."""

import json
import os
from dataclasses import dataclass, field

SCHEMA_TAG = "dirac-disquant/1"


def worker_count() -> int:
    """Worker pool size, capped by DIRAC_DISQUANT_THREADS (default 1)."""
    raw = os.environ.get("DIRAC_DISQUANT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class RunConfig:
    """Seed, tolerances, output choices, and physical parameters."""

    seed: int = 42
    tol_scale: float = 1.0
    out_format: str = "json"
    out_path: str = None
    m: float = 1.0
    m0: float = 1.0
    hbar: float = 1.0
    c: float = 1.0
    e_charge: float = 1.0

    def __post_init__(self):
        if self.out_format not in ("json", "csv"):
            raise ValueError(f"format must be csv or json, got {self.out_format!r}")
        if self.tol_scale <= 0:
            raise ValueError("tol-scale must be positive")


@dataclass(frozen=True)
class CheckRecord:
    """One verification check: pass iff residual <= tolerance."""

    check_id: str
    description: str
    residual: float
    tolerance: float
    seed: int

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "id": self.check_id,
            "description": self.description,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "seed": self.seed,
        }


@dataclass
class VerificationReport:
    """Outcome of one suite.  Wall time is kept out of the serialized forms
    so identical (command, seed, config) runs produce byte-identical files."""

    suite: str
    seed: int
    tol_scale: float
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, check_id, description, residual, tolerance):
        self.records.append(CheckRecord(
            check_id=check_id,
            description=description,
            residual=float(residual),
            tolerance=float(tolerance) * self.tol_scale,
            seed=self.seed,
        ))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def counts(self):
        ok = sum(1 for r in self.records if r.passed)
        return ok, len(self.records)

    def failures(self):
        return [r for r in self.records if not r.passed]

    def to_json(self) -> str:
        ok, total = self.counts
        payload = {
            "schema": SCHEMA_TAG,
            "kind": "verification-report",
            "suite": self.suite,
            "seed": self.seed,
            "tol_scale": self.tol_scale,
            "summary": {"passed": ok, "failed": total - ok, "total": total},
            "checks": [r.as_dict() for r in self.records],
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_csv(self) -> str:
        lines = [f"# schema={SCHEMA_TAG} kind=verification-report suite={self.suite} "
                 f"seed={self.seed} tol_scale={fmt(self.tol_scale)}",
                 "id,description,residual,tolerance,passed,seed"]
        for r in self.records:
            desc = r.description.replace(",", ";")
            lines.append(f"{r.check_id},{desc},{fmt(r.residual)},{fmt(r.tolerance)},"
                         f"{int(r.passed)},{r.seed}")
        return "\n".join(lines) + "\n"

    def render(self, out_format):
        return self.to_json() if out_format == "json" else self.to_csv()


def fmt(x) -> str:
    """17 significant digits, '.' decimal separator, no locale surprises."""
    x = float(x)
    if x == 0.0:
        x = 0.0     # normalize -0.0
    return format(x, ".17g")


def csv_table(header_meta: dict, columns: list, rows) -> str:
    """A CSV file: '#' metadata lines, one header line, 17-digit numbers."""
    lines = [f"# {k}={fmt(v) if isinstance(v, float) else v}"
             for k, v in header_meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def json_table(meta: dict, columns: list, rows) -> str:
    payload = {"schema": SCHEMA_TAG, **meta,
               "columns": columns,
               "rows": [[float(v) for v in row] for row in rows]}
    return json.dumps(payload, indent=2) + "\n"
