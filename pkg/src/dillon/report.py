"""Verification report record shared by the checks and the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field


@dataclass
class Report:
    claim: str
    parameters: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    status: str = "verified"
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    def finish(self, started: float) -> "Report":
        self.elapsed_ms = int(round((time.perf_counter() - started) * 1000))
        if self.status != "skipped":
            self.status = "counterexample" if self.counterexamples else "verified"
        return self

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    yield report
    report.finish(t0)
