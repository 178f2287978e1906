"""Experiment reports: one row per instance, CSV round-trip, text table."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, fields
from typing import Optional

TIMING_COLUMNS = ("gen_time", "lower_time", "upper_time", "exact_time", "tr2_time")


@dataclass
class Row:
    family: str
    instance: str
    seed: int
    states: int
    lower: bool
    lower_iter: int
    upper: bool
    upper_iter: int = 0
    exact: Optional[bool] = None
    tr2: Optional[bool] = None
    gen_time: float = 0.0
    lower_time: float = 0.0
    upper_time: float = 0.0
    exact_time: Optional[float] = None
    tr2_time: Optional[float] = None

    @property
    def match(self) -> bool:
        return self.lower == self.upper

    @property
    def verdict(self) -> str:
        if self.lower:
            return "True"
        if not self.upper:
            return "False"
        return "Unknown"


_COLUMNS = [f.name for f in fields(Row)]
_DATA_COLUMNS = [c for c in _COLUMNS if c not in TIMING_COLUMNS]
_HEADER = _DATA_COLUMNS[:5] + ["match"] + _DATA_COLUMNS[5:] + list(TIMING_COLUMNS)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_bool(text: str) -> Optional[bool]:
    if text == "":
        return None
    if text in ("True", "False"):
        return text == "True"
    raise ValueError(f"not a boolean: {text!r}")


@dataclass
class ExperimentReport:
    rows: list[Row] = field(default_factory=list)

    def add(self, row: Row) -> None:
        self.rows.append(row)

    # aggregates; all are fractions in [0, 1]

    def _fraction(self, values) -> float:
        values = [v for v in values if v is not None]
        return sum(values) / len(values) if values else 0.0

    @property
    def match_rate(self) -> float:
        return self._fraction(r.match for r in self.rows)

    @property
    def lower_true(self) -> float:
        return self._fraction(r.lower for r in self.rows)

    @property
    def upper_true(self) -> float:
        return self._fraction(r.upper for r in self.rows)

    @property
    def exact_true(self) -> float:
        return self._fraction(r.exact for r in self.rows)

    @property
    def tr2_true(self) -> float:
        return self._fraction(r.tr2 for r in self.rows)

    @property
    def mean_states(self) -> float:
        return self._fraction(r.states for r in self.rows)

    # CSV

    def to_csv(self, timings: bool = True) -> str:
        header = _HEADER if timings else [c for c in _HEADER if c not in TIMING_COLUMNS]
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in self.rows:
            w.writerow([_cell(r.match if c == "match" else getattr(r, c)) for c in header])
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> ExperimentReport:
        report = cls()
        for rec in csv.DictReader(io.StringIO(text)):
            kwargs = {}
            for f in fields(Row):
                if f.name not in rec:
                    continue
                raw = rec[f.name]
                if f.name in ("family", "instance"):
                    kwargs[f.name] = raw
                elif f.name in ("seed", "states", "lower_iter", "upper_iter"):
                    kwargs[f.name] = int(raw)
                elif f.name in ("lower", "upper"):
                    kwargs[f.name] = _parse_bool(raw)
                elif f.name in ("exact", "tr2"):
                    kwargs[f.name] = _parse_bool(raw)
                else:
                    kwargs[f.name] = float(raw) if raw != "" else None
            row = Row(**kwargs)
            if "match" in rec and _parse_bool(rec["match"]) != row.match:
                raise ValueError(f"inconsistent match flag in row {rec}")
            report.add(row)
        return report

    # text

    def table(self) -> str:
        """One fixed-width line per instance group."""
        groups: dict[str, list[Row]] = {}
        for r in self.rows:
            groups.setdefault(r.instance, []).append(r)
        head = (f"{'instance':<12}{'#inst':>6}{'#states':>10}{'tgen':>9}"
                f"{'#iter':>7}{'tlow':>9}{'%low':>7}{'#iter':>7}{'tup':>9}{'%up':>7}"
                f"{'match':>7}{'%exact':>8}{'%tr2':>7}")
        lines = [head, "-" * len(head)]
        for name, rows in groups.items():
            sub = ExperimentReport(rows)
            n = len(rows)
            mean = lambda xs: sum(xs) / len(xs)  # noqa: E731
            exact = f"{100 * sub.exact_true:7.0f}%" if any(r.exact is not None for r in rows) else f"{'-':>8}"
            tr2 = f"{100 * sub.tr2_true:6.0f}%" if any(r.tr2 is not None for r in rows) else f"{'-':>7}"
            lines.append(
                f"{name:<12}{n:>6}{sub.mean_states:>10.1f}{mean([r.gen_time for r in rows]):>9.3f}"
                f"{mean([r.lower_iter for r in rows]):>7.1f}{mean([r.lower_time for r in rows]):>9.3f}"
                f"{100 * sub.lower_true:>6.0f}%"
                f"{mean([r.upper_iter for r in rows]):>7.1f}{mean([r.upper_time for r in rows]):>9.3f}"
                f"{100 * sub.upper_true:>6.0f}%{100 * sub.match_rate:>6.0f}%{exact}{tr2}"
            )
        return "\n".join(lines)
