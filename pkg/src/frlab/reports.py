"""Machine-readable reports for the verification commands."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    params: dict
    universe: dict  # tier, caps snapshot, group count
    pass_count: int
    fail_count: int
    undecided_count: int
    witnesses: list  # (group label, detail dict) pairs
    wall_time_s: float
    schema: int = SCHEMA_VERSION

    def validate(self) -> None:
        total = self.pass_count + self.fail_count + self.undecided_count
        if total != self.universe.get("size"):
            raise ValueError("pass + fail + undecided must equal universe size")
        if self.fail_count > 0 and not self.witnesses:
            raise ValueError("failures require witnesses")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witnesses"] = [list(w) for w in self.witnesses]
        return d

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "CheckReport":
        return CheckReport(
            check_id=d["check_id"], params=d["params"], universe=d["universe"],
            pass_count=d["pass_count"], fail_count=d["fail_count"],
            undecided_count=d["undecided_count"],
            witnesses=[tuple(w) for w in d["witnesses"]],
            wall_time_s=d["wall_time_s"], schema=d["schema"])

    @staticmethod
    def from_json(text: str) -> "CheckReport":
        return CheckReport.from_dict(json.loads(text))

    def summary_line(self) -> str:
        status = "PASS" if self.fail_count == 0 else "FAIL"
        return (f"[{status}] {self.check_id} {self.params}: "
                f"pass={self.pass_count} fail={self.fail_count} "
                f"undecided={self.undecided_count} "
                f"({self.wall_time_s:.2f}s)")
