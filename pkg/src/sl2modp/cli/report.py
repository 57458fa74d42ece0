"""Check results, report assembly and emission."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import __version__

STATUSES = ("pass", "fail", "evidence-only")


@dataclass
class Check:
    name: str
    status: str
    details: str = ""
    runtime_ms: int = 0

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details,
                "runtime_ms": self.runtime_ms}


@dataclass
class Report:
    suite: str
    config: dict
    checks: list[Check] = field(default_factory=list)
    version: str = __version__
    cache_hits: int = 0
    incomplete: bool = False

    @property
    def overall(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    @property
    def warnings(self) -> list[str]:
        out = []
        if not self.checks:
            out.append("report contains no checks")
        if self.incomplete:
            out.append("time budget exhausted; report is partial")
        return out

    def as_dict(self, timing: bool = True) -> dict:
        checks = sorted(self.checks, key=lambda c: c.name)
        d = {
            "suite": self.suite,
            "config": self.config,
            "checks": [c.as_dict() | ({} if timing else {"runtime_ms": 0}) for c in checks],
            "overall": self.overall,
            "version": self.version,
            "incomplete": self.incomplete,
            "warnings": self.warnings,
        }
        if timing:
            d["cache_hits"] = self.cache_hits
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        checks = [Check(c["name"], c["status"], c.get("details", ""), int(c.get("runtime_ms", 0)))
                  for c in d["checks"]]
        return cls(d["suite"], d.get("config", {}), checks, d.get("version", __version__),
                   int(d.get("cache_hits", 0)), bool(d.get("incomplete", False)))


def to_json(report: Report, timing: bool = True) -> str:
    return json.dumps(report.as_dict(timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_text(report: Report, timing: bool = True) -> str:
    d = report.as_dict(timing)
    rows = [(c["name"], c["status"], str(c["runtime_ms"]), c["details"]) for c in d["checks"]]
    head = ("check", "status", "ms", "details")
    widths = [max([len(head[i])] + [len(r[i]) for r in rows]) for i in range(3)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths) + "  {}"
    lines = [f"suite: {d['suite']}   version: {d['version']}   overall: {d['overall']}",
             fmt.format(*head), fmt.format(*("-" * w for w in widths), "-------")]
    lines += [fmt.format(*r) for r in rows]
    lines += [f"warning: {w}" for w in d["warnings"]]
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "json", timing: bool = True) -> bytes:
    if fmt == "json":
        return to_json(report, timing).encode()
    if fmt == "text":
        return to_text(report, timing).encode()
    raise ValueError(f"unknown report format {fmt!r}")
