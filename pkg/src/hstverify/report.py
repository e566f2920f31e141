"""Verification records and their JSON / CSV serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, List, Sequence

import mpmath
from mpmath import mpf

from .config import TOLERANCES
from .special import BallReal

SCHEMA_PATH = Path(__file__).with_name("schema") / "report.schema.json"
STATUSES = ("pass", "fail", "skipped")


@dataclass(frozen=True)
class VerificationReport:
    task_id: str
    paper_anchor: str
    computed: str
    expected: str
    abs_error: str
    rel_error: str
    precision_bits: int
    elapsed_ms: int
    status: str
    tolerance: str

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}, got {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def without_timing(self) -> "VerificationReport":
        d = asdict(self)
        d["elapsed_ms"] = 0
        return VerificationReport(**d)


FIELD_NAMES: List[str] = [f.name for f in fields(VerificationReport)]


def tolerance_text(kind: str) -> str:
    tol = TOLERANCES[kind]
    return "exact" if tol == 0 else f"{tol:.0e}"


def fmt_num(x: object, digits: int = 4) -> str:
    """Short decimal for errors; exact zero prints as ``0``."""
    x = mpmath.mpmathify(x)
    if x == 0:
        return "0"
    return mpmath.nstr(x, digits, min_fixed=0, max_fixed=0)


def fmt_ball(b: BallReal, digits: int = 30) -> str:
    return f"{mpmath.nstr(b.mid, digits)} +/- {fmt_num(b.rad, 3)}"


def fmt_value(x: object, digits: int = 30) -> str:
    x = mpmath.mpmathify(x)
    if isinstance(x, mpmath.mpc):
        if x.imag == 0:
            return mpmath.nstr(x.real, digits)
        return mpmath.nstr(x, digits)
    return mpmath.nstr(x, digits)


def sort_reports(reports: Iterable[VerificationReport]) -> List[VerificationReport]:
    return sorted(reports, key=lambda r: r.task_id)


def to_json(reports: Sequence[VerificationReport]) -> str:
    return json.dumps([asdict(r) for r in reports], indent=2) + "\n"


def to_csv(reports: Sequence[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELD_NAMES, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(asdict(r))
    return buf.getvalue()


def from_json(text: str) -> List[VerificationReport]:
    return [VerificationReport(**d) for d in json.loads(text)]


def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text())


def tolerance_table() -> str:
    width = max(len(k) for k in TOLERANCES)
    lines = ["tolerances (relative; exact = symbolic equality):"]
    lines += [f"  {k:<{width}}  {tolerance_text(k)}" for k in TOLERANCES]
    return "\n".join(lines)


def text_table(reports: Sequence[VerificationReport]) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.status.upper():<7} {r.task_id}  rel_error={r.rel_error}  tol={r.tolerance}  [{r.elapsed_ms} ms]")
    n_pass = sum(r.passed for r in reports)
    n_fail = sum(r.status == "fail" for r in reports)
    lines.append(f"{n_pass} passed, {n_fail} failed, {len(reports) - n_pass - n_fail} skipped")
    return "\n".join(lines)


def rel_err(computed: object, expected: object) -> mpf:
    c, e = mpmath.mpmathify(computed), mpmath.mpmathify(expected)
    return abs(c - e) / abs(e) if e != 0 else abs(c - e)
