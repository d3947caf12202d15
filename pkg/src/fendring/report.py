from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Report:
    """Outcome of a check: pass/fail plus the first counterexample found."""

    name: str
    passed: bool = True
    failure: Optional[str] = None
    counterexample: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def fail(self, failure: str, counterexample: Any = None) -> "Report":
        self.passed = False
        self.failure = failure
        self.counterexample = counterexample
        return self

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {status}"
        if not self.passed:
            line += f" ({self.failure})"
            if self.counterexample:
                line += f" {self.counterexample}"
        return line
