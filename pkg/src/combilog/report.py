from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Failure:
    check: str
    sample: str
    counterexample: dict[str, Any]


@dataclass
class LawReport:
    """Outcome of a law suite: per-check sample counts, failures, diagnostics."""

    suite: str
    seed: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def samples(self) -> int:
        return sum(self.checks.values())

    @property
    def status(self) -> str:
        return "fail" if self.failures else "pass"

    @property
    def passed(self) -> bool:
        return not self.failures

    def count(self, check: str, n: int = 1) -> None:
        self.checks[check] = self.checks.get(check, 0) + n

    def fail(self, check: str, sample: str, **counterexample) -> None:
        self.failures.append(Failure(check, sample, counterexample))

    def failures_for(self, check: str) -> list[Failure]:
        return [f for f in self.failures if f.check == check]

    def merge(self, other: "LawReport") -> "LawReport":
        for name, n in other.checks.items():
            self.count(name, n)
        self.failures.extend(other.failures)
        for key, value in other.diagnostics.items():
            self.diagnostics[key] = value
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "status": self.status,
            "samples": self.samples,
            "checks": dict(sorted(self.checks.items())),
            "failures": [
                {"check": f.check, "sample": f.sample, "counterexample": f.counterexample} for f in self.failures
            ],
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed}): {self.status.upper()}, {self.samples} checks"]
        for name, n in sorted(self.checks.items()):
            bad = len(self.failures_for(name))
            lines.append(f"  {'FAIL' if bad else 'ok  '} {name}: {n} samples, {bad} failures")
        for f in self.failures[:10]:
            lines.append(f"  counterexample [{f.check} #{f.sample}]:")
            for key, value in f.counterexample.items():
                lines.append(f"    {key}: {value if isinstance(value, str) else json.dumps(value, sort_keys=True)}")
        if len(self.failures) > 10:
            lines.append(f"  ... {len(self.failures) - 10} more failures")
        for key, value in sorted(self.diagnostics.items()):
            lines.append(f"  diagnostic {key}: {json.dumps(value, sort_keys=True)}")
        return "\n".join(lines)
