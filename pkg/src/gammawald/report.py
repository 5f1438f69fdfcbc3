"""Structured pass/fail findings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Finding:
    kind: str
    instance: str
    witness: Any = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "instance": self.instance, "witness": self.witness}


@dataclass
class Report:
    """Findings plus per-check counters.

    ``counts`` maps a check name to a dict with ``checked``, ``passed`` and
    ``skipped`` entries.  A report is clean when it has no findings.
    """

    command: str
    findings: list[Finding] = field(default_factory=list)
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)
    digest: str = ""
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.findings

    def fail(self, kind: str, instance: str, witness: Any = None) -> None:
        self.findings.append(Finding(kind, instance, witness))

    def tally(self, check: str, *, checked: int = 0, passed: int = 0, skipped: int = 0) -> None:
        c = self.counts.setdefault(check, {"checked": 0, "passed": 0, "skipped": 0})
        c["checked"] += checked
        c["passed"] += passed
        c["skipped"] += skipped

    def record(self, check: str, ok: bool, instance: str = "", witness: Any = None) -> bool:
        """Count one checked instance and file a finding if it failed."""
        self.tally(check, checked=1, passed=int(ok))
        if not ok:
            self.fail(check, instance, witness)
        return ok

    def skip(self, check: str, n: int = 1, reason: str = "out_of_window") -> None:
        """Count skipped instances; reasons are tallied under ``notes["skips"]``."""
        self.tally(check, skipped=n)
        per = self.notes.setdefault("skips", {}).setdefault(check, {})
        per[reason] = per.get(reason, 0) + n

    def merge(self, other: Report, prefix: str = "") -> None:
        for f in other.findings:
            self.findings.append(Finding(prefix + f.kind, f.instance, f.witness))
        for name, c in other.counts.items():
            self.tally(prefix + name, **c)
        for k, v in other.notes.items():
            if k == "skips":
                for check, reasons in v.items():
                    for reason, n in reasons.items():
                        per = self.notes.setdefault("skips", {}).setdefault(prefix + check, {})
                        per[reason] = per.get(reason, 0) + n
            else:
                self.notes[prefix + k] = v

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.digest,
            "parameters": _sorted(self.params),
            "outcome": "pass" if self.ok else "fail",
            "counts": {k: dict(v) for k, v in sorted(self.counts.items())},
            "findings": [f.to_json() for f in self.findings],
            "notes": _sorted(self.notes),
        }

    def summary_lines(self) -> list[str]:
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        if self.digest:
            lines.append(f"  input: {self.digest} {_sorted(self.params)}")
        for name, c in sorted(self.counts.items()):
            lines.append(
                f"  {name}: checked={c['checked']} passed={c['passed']} skipped={c['skipped']}"
            )
        for k, v in self.notes.items():
            lines.append(f"  {k}: {v}")
        for f in self.findings[:50]:
            lines.append(f"  ! {f.kind} [{f.instance}] {f.witness}")
        if len(self.findings) > 50:
            lines.append(f"  ... {len(self.findings) - 50} more findings")
        return lines


def _sorted(v):
    if isinstance(v, dict):
        return {str(k): _sorted(v[k]) for k in sorted(v, key=str)}
    if isinstance(v, (list, tuple)):
        return [_sorted(x) for x in v]
    return v
