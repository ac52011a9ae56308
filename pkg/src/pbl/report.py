"""Verification reports and their JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "flagged")
PLUMBING = "plumbing"


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    status: str
    expected: Any
    computed: Any
    anchor: str
    details: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if not self.anchor:
            raise ValueError("every check needs an anchor or the plumbing marker")

    def to_json(self) -> dict:
        return {
            "module": self.module,
            "name": self.name,
            "status": self.status,
            "expected": self.expected,
            "computed": self.computed,
            "anchor": self.anchor,
            "details": list(self.details),
        }


@dataclass
class VerificationReport:
    seed: int
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def sorted_checks(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: (c.module, c.name))

    @property
    def ok(self) -> bool:
        """Flagged checks never count as failures."""
        return all(c.status != "fail" for c in self.checks)

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.checks) for s in STATUSES}

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "summary": self.counts(),
            "checks": [c.to_json() for c in self.sorted_checks()],
        }


def _compact(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def emit_report(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    counts = report.counts()
    lines = [
        f"verification report  seed={report.seed}  "
        f"pass={counts['pass']} fail={counts['fail']} flagged={counts['flagged']}"
    ]
    checks = report.sorted_checks()
    if not checks:
        return lines[0] + "\n"
    w_mod = max(len(c.module) for c in checks)
    w_name = max(len(c.name) for c in checks)
    for c in checks:
        lines.append(f"{c.status.upper():<8} {c.module:<{w_mod}}  {c.name:<{w_name}}  {c.anchor}")
    failing = [c for c in checks if c.status == "fail"]
    if failing:
        lines.append("")
        lines.append("FAIL")
        for c in failing:
            lines.append(f"  {c.module}/{c.name}")
            lines.append(f"    expected: {_compact(c.expected)}")
            lines.append(f"    computed: {_compact(c.computed)}")
            lines.extend(f"    {d}" for d in c.details)
    flagged = [c for c in checks if c.status == "flagged"]
    if flagged:
        lines.append("")
        lines.append("FLAGGED")
        for c in flagged:
            lines.append(f"  {c.module}/{c.name}")
            lines.extend(f"    {d}" for d in c.details)
    return "\n".join(lines) + "\n"


def render_table(headers: list[str], rows: list[list[Any]]) -> str:
    """Aligned plain-text table."""
    cells = [[str(h) for h in headers]] + [[str(v) for v in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    out = []
    for k, row in enumerate(cells):
        out.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        if k == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"
