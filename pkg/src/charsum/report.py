"""Per-identity check records and suite reports, with JSON/CSV serialization."""

import csv
import json
from dataclasses import dataclass, field


def _sig3(x: float) -> float:
    """Round to 3 significant digits for output; reports are not bit-exact."""
    return float(f"{x:.3g}")


@dataclass
class CheckRecord:
    check_id: str
    inputs: str
    deviation: float
    passed: bool

    def sort_key(self):
        return (self.check_id, self.inputs)


@dataclass
class VerificationReport:
    suite: str
    q: int
    a_index: int | None  # dlog of the parameter a, None when a-independent
    records: list[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, check_id: str, inputs: str, deviation: float, tol: float):
        self.records.append(CheckRecord(check_id, inputs, deviation, deviation <= tol))

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.records), default=0.0)

    @property
    def n_failed(self) -> int:
        return sum(1 for r in self.records if not r.passed)

    @property
    def all_passed(self) -> bool:
        return self.n_failed == 0

    def sorted(self) -> "VerificationReport":
        rep = VerificationReport(self.suite, self.q, self.a_index, wall_time=self.wall_time)
        rep.records = sorted(self.records, key=CheckRecord.sort_key)
        return rep

    def json_objects(self):
        for r in self.records:
            yield {
                "suite": self.suite,
                "q": self.q,
                "a_index": self.a_index,
                "check_id": r.check_id,
                "inputs": r.inputs,
                "deviation": _sig3(r.deviation),
                "pass": r.passed,
            }

    def summary_line(self) -> str:
        a_part = "" if self.a_index is None else f" a_index={self.a_index}"
        status = "PASS" if self.all_passed else f"FAIL ({self.n_failed} checks)"
        return (
            f"{self.suite:14s} q={self.q:<4d}{a_part:14s} "
            f"checks={len(self.records):<6d} max_dev={self.max_deviation:.3g}  {status}"
        )


def report_sort_key(rep: VerificationReport):
    return (rep.suite, rep.q, -1 if rep.a_index is None else rep.a_index)


def write_json(reports: list[VerificationReport], path: str):
    objs = [obj for rep in reports for obj in rep.sorted().json_objects()]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(objs, fh, indent=1)
        fh.write("\n")


def write_csv(reports: list[VerificationReport], path: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["suite", "q", "a_index", "n_checks", "n_failed", "max_deviation", "wall_time_s"])
        for rep in sorted(reports, key=report_sort_key):
            w.writerow(
                [
                    rep.suite,
                    rep.q,
                    "" if rep.a_index is None else rep.a_index,
                    len(rep.records),
                    rep.n_failed,
                    f"{rep.max_deviation:.3g}",
                    f"{rep.wall_time:.3f}",
                ]
            )
