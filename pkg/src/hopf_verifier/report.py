"""Check results shared by every verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    check: str
    anchor: str
    passed: bool
    nterms: int = 0
    max_degree: int = -1
    detail: str = ""
    seconds: float = 0.0
    residual: object = field(default=None, repr=False, compare=False)

    def as_dict(self, timings: bool = False) -> dict:
        d = {
            "check": self.check,
            "anchor": self.anchor,
            "passed": self.passed,
            "residual_terms": self.nterms,
            "residual_max_degree": self.max_degree,
        }
        if self.detail:
            d["detail"] = self.detail
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


def summarize(residual) -> tuple[int, int]:
    """(number of nonzero terms, largest word degree) of a residual."""
    if residual is None:
        return 0, -1
    if hasattr(residual, "summary"):
        return residual.summary()
    if hasattr(residual, "is_zero"):
        return (0, -1) if residual.is_zero() else (1, 0)
    return (0, -1) if not residual else (1, 0)


@dataclass
class Report:
    name: str
    entries: list[CheckResult] = field(default_factory=list)
    caps: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self):
        return self.passed

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def record(self, check: str, anchor: str, residual, detail: str = "", seconds: float = 0.0):
        """Add an entry that passes iff ``residual`` vanishes."""
        nterms, maxdeg = summarize(residual)
        entry = CheckResult(check, anchor, nterms == 0, nterms, maxdeg, detail, seconds, residual)
        self.entries.append(entry)
        return entry

    def flag(self, check: str, anchor: str, passed: bool, detail: str = ""):
        entry = CheckResult(check, anchor, bool(passed), 0 if passed else 1, -1, detail)
        self.entries.append(entry)
        return entry

    def extend(self, other: "Report"):
        self.entries.extend(other.entries)
        return self

    def failures(self) -> list[CheckResult]:
        return [e for e in self.entries if not e.passed]

    def get(self, check: str) -> CheckResult:
        for e in self.entries:
            if e.check == check:
                return e
        raise KeyError(check)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.name}: {status} ({len(self.entries)} checks)"]
        for e in self.entries:
            if not e.passed:
                lines.append(f"  FAIL {e.check}: {e.nterms} residual terms {e.detail}")
        return "\n".join(lines)
