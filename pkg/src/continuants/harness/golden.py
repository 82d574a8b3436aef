"""Published count tables, stored as JSON data files next to this module."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import List

TABLE_NAMES = ("roots-a", "roots-b", "roots-exotic", "w-plus", "w-minus")


@dataclass(frozen=True)
class GoldenRow:
    ring: str
    n: int
    kind: str
    target: str
    expected: int


@dataclass(frozen=True)
class GoldenTable:
    name: str
    provenance: str
    rows: List[GoldenRow]

    def __len__(self):
        return len(self.rows)


def load_table(name) -> GoldenTable:
    if name not in TABLE_NAMES:
        raise KeyError(f"unknown table {name!r}; choose from {', '.join(TABLE_NAMES)}")
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    raw = json.loads(text)
    rows = [GoldenRow(r["ring"], int(r["n"]), r["kind"], str(r["target"]), int(r["expected"]))
            for r in raw["rows"]]
    return GoldenTable(raw["name"], raw["provenance"], rows)
