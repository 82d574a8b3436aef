"""CountRecord rows and their csv / json / markdown serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Optional

COLUMNS = ("ring", "n", "kind", "target", "method", "value", "expected", "status")


@dataclass
class CountRecord:
    ring: str
    n: int
    kind: str
    target: str
    method: str
    value: Optional[int] = None
    expected: Optional[int] = None
    status: str = "ok"

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise ValueError("counts are nonnegative")

    @property
    def failed(self):
        return self.status in ("FAIL", "disagree")

    def row(self):
        return ["" if v is None else str(v) for v in (getattr(self, c) for c in COLUMNS)]


def to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def to_json(records):
    # big integers stay exact as JSON numbers
    return json.dumps([asdict(r) for r in records], indent=1) + "\n"


def to_markdown(records):
    lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
    lines += ["| " + " | ".join(r.row()) + " |" for r in records]
    return "\n".join(lines) + "\n"


FORMATS = {"csv": to_csv, "json": to_json, "md": to_markdown}


def serialize(records, fmt):
    try:
        return FORMATS[fmt](records)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None
