"""Claim records, certification reports and their line-oriented serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

from . import rigor
from .rigor import Certainty, Interval, Precision, decide_less

SCHEMA_VERSION = 1
TRUE, FALSE = Certainty.TRUE.value, Certainty.FALSE.value

RECORD_FIELDS = ("id", "eq", "claim", "computed_lo", "computed_hi", "bound", "verdict", "bits", "blocking")


@dataclass
class ClaimRecord:
    id: str
    eq: str
    claim: str
    computed_lo: str
    computed_hi: str
    bound: str
    verdict: str
    bits: int = 0
    blocking: bool = True

    @property
    def ok(self) -> bool:
        return self.verdict == TRUE or not self.blocking

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in RECORD_FIELDS}


def _render(x) -> tuple[str, str]:
    if isinstance(x, Interval):
        return x.format()
    q = rigor.exact(x)
    s = decimal_text(q)
    return s, s


def decimal_text(q) -> str:
    """Exact decimal text for terminating fractions, ``p/q`` otherwise."""
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return str(q)
    if q.denominator == 1:
        return str(q.numerator)
    digits = 0
    while (q * 10**digits).denominator != 1:
        digits += 1
    scaled = abs(q.numerator * 10**digits // q.denominator)
    text = str(scaled).rjust(digits + 1, "0")
    return ("-" if q < 0 else "") + text[:-digits] + "." + text[-digits:]


@dataclass
class CertificationReport:
    title: str
    records: list[ClaimRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.records) and all(r.ok for r in self.records)

    def get(self, slug: str) -> ClaimRecord:
        for r in self.records:
            if r.id.endswith(":" + slug):
                return r
        raise KeyError(slug)

    def add(self, rec: ClaimRecord) -> ClaimRecord:
        self.records.append(rec)
        return rec

    def extend(self, other: CertificationReport) -> None:
        self.records.extend(other.records)

    def exact_equal(self, eq: str, slug: str, claim: str, value, expected, blocking=True) -> ClaimRecord:
        ok = value is not None and rigor.exact(value) == rigor.exact(expected)
        lo, hi = _render(value) if value is not None else ("n/a", "n/a")
        return self.add(ClaimRecord(f"{eq}:{slug}", eq, claim, lo, hi, _render(expected)[0],
                                    TRUE if ok else FALSE, 0, blocking))

    def check(self, eq: str, slug: str, claim: str, holds: bool, value="", bound="", blocking=True) -> ClaimRecord:
        """Record a claim decided by exact integer or rational arithmetic."""
        lo, hi = _render(value) if value != "" else ("", "")
        b = _render(bound)[0] if bound != "" else ""
        return self.add(ClaimRecord(f"{eq}:{slug}", eq, claim, lo, hi, b,
                                    TRUE if holds else FALSE, 0, blocking))

    def less(self, eq: str, slug: str, claim: str,
             fn: Callable[[int], tuple], precision: Precision = rigor.DEFAULT_PRECISION,
             strict: bool = True, blocking: bool = True) -> ClaimRecord:
        """Certify ``lhs < rhs`` (or ``<=`` when both sides are exact rationals)."""
        lhs, rhs = fn(precision.bits)
        if not strict and not isinstance(lhs, Interval) and not isinstance(rhs, Interval):
            holds = rigor.exact(lhs) <= rigor.exact(rhs)
            lo, hi = _render(lhs)
            return self.add(ClaimRecord(f"{eq}:{slug}", eq, claim, lo, hi, _render(rhs)[0],
                                        TRUE if holds else FALSE, 0, blocking))
        d = decide_less(fn, precision)
        if isinstance(lhs, Interval) or not isinstance(rhs, Interval):
            shown, other, raw_other = d.lhs, d.rhs, rhs
        else:
            shown, other, raw_other = d.rhs, d.lhs, lhs
        lo, hi = _render(shown)
        if isinstance(raw_other, Interval):
            bound = "[{}, {}]".format(*_render(other))
        else:
            bound = _render(raw_other)[0]
        verdict = d.verdict
        if verdict is Certainty.INDETERMINATE:
            claim = f"{claim} (undecided at {d.bits} bits)"
        return self.add(ClaimRecord(f"{eq}:{slug}", eq, claim, lo, hi, bound,
                                    TRUE if verdict is Certainty.TRUE else FALSE, d.bits, blocking))


@dataclass
class ReportEnvelope:
    command: str
    config: dict
    records: list[ClaimRecord]
    version: str = ""
    timestamp: str = ""
    schema: int = SCHEMA_VERSION
    summary: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.version:
            from . import __version__
            self.version = __version__
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")

    def header(self) -> dict:
        return {"kind": "envelope", "schema": self.schema, "version": self.version,
                "timestamp": self.timestamp, "command": self.command,
                "config": self.config, "summary": self.summary}

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.header(), sort_keys=False)]
        lines += [json.dumps({"kind": "record", **r.to_dict()}) for r in self.records]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> ReportEnvelope:
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        head, body = rows[0], rows[1:]
        if head.get("kind") != "envelope":
            raise ValueError("first line is not an envelope header")
        records = [ClaimRecord(**{k: r[k] for k in RECORD_FIELDS}) for r in body]
        return cls(command=head["command"], config=head["config"], records=records,
                   version=head["version"], timestamp=head["timestamp"],
                   schema=head["schema"], summary=head.get("summary", {}))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in self.records:
            w.writerow(r.to_dict())
        return buf.getvalue()

    def to_human(self) -> str:
        out = [f"{self.command}  (jescert {self.version}, schema {self.schema})"]
        width = max((len(r.id) for r in self.records), default=0)
        for r in self.records:
            mark = "ok  " if r.verdict == TRUE else ("note" if not r.blocking else "FAIL")
            value = r.computed_lo if r.computed_lo == r.computed_hi else f"[{r.computed_lo}, {r.computed_hi}]"
            line = f"  {mark} {r.id:<{width}}  {r.claim}"
            if value:
                line += f"   value {value}"
            if r.bound:
                line += f"   bound {r.bound}"
            out.append(line)
        for k, v in self.summary.items():
            out.append(f"  {k}: {v}")
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "jsonl":
            return self.to_jsonl()
        if fmt == "csv":
            return self.to_csv()
        return self.to_human()
