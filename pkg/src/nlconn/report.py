"""Verification reports and their JSON / text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .calculus import ScalarForm, VectorForm, var_name
from .ratpoly import MultiPoly

REPORT_VERSION = "1"
MAX_RESIDUAL_TERMS = 32


@dataclass
class CheckRecord:
    check_id: str
    statement: str
    paper_ref: str
    status: str  # pass | fail | skipped
    residual: str = ""
    duration: float | None = None


@dataclass
class VerificationReport:
    seed: int
    n: int
    checks: list = field(default_factory=list)

    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary()["fail"] == 0

    def by_id(self, check_id: str) -> CheckRecord:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)


def _basis(idx, num_vars) -> str:
    return "^".join("d" + var_name(i, num_vars) for i in idx)


def _entries(obj):
    """(label, polynomial) pairs for any residual object."""
    if isinstance(obj, MultiPoly):
        if obj:
            yield "", obj
    elif isinstance(obj, ScalarForm):
        for idx, p in obj.items():
            yield _basis(idx, obj.num_vars), p
    elif isinstance(obj, VectorForm):
        for c, idx, p in obj.nonzero_terms():
            b = _basis(idx, obj.num_vars)
            target = "d/d" + var_name(c, obj.num_vars)
            yield (f"{b} (x) {target}" if b else target), p
    elif isinstance(obj, (list, tuple)):
        for item in obj:
            yield from _entries(item)
    else:
        raise TypeError(f"cannot render residual of type {type(obj).__name__}")


def render_residual(obj, max_terms: int = MAX_RESIDUAL_TERMS) -> str:
    """Printed residual, empty when zero; truncated after ``max_terms`` monomials."""
    if obj is None:
        return ""
    if isinstance(obj, str):
        return obj
    parts, used, total = [], 0, 0
    for label, p in _entries(obj):
        total += len(p)
        room = max_terms - used
        if room <= 0:
            continue
        shown = p.truncated(room)
        used += len(shown)
        body = shown.format() + (" ..." if len(shown) < len(p) else "")
        parts.append(f"({body})" + (f" {label}" if label else ""))
    text = " + ".join(parts)
    if total > used:
        text += f" [{total - used} more terms omitted]"
    return text


def report_dict(report: VerificationReport, timings: bool = False) -> dict:
    checks = []
    for c in report.checks:
        entry = {
            "check_id": c.check_id,
            "statement": c.statement,
            "paper_ref": c.paper_ref,
            "status": c.status,
            "residual": c.residual,
        }
        if timings:
            entry["duration"] = round(c.duration or 0.0, 6)
        checks.append(entry)
    return {
        "version": REPORT_VERSION,
        "seed": report.seed,
        "n": report.n,
        "checks": checks,
        "summary": report.summary(),
    }


def emit_report(report: VerificationReport, fmt: str = "json", timings: bool = False) -> bytes:
    if fmt == "json":
        return (json.dumps(report_dict(report, timings), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        lines = []
        for c in report.checks:
            line = f"{c.check_id}  {c.status.upper()}  {c.statement}  ({c.paper_ref})"
            if c.residual:
                line += f"\n    residual: {c.residual}"
            if timings:
                line += f"  [{c.duration or 0.0:.3f}s]"
            lines.append(line)
        s = report.summary()
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped (seed {report.seed}, n={report.n})")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")
