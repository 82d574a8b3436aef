"""Golden tables, method dispatch, cross-checks and the command line."""

from .compute import KINDS, METHODS, NotApplicable, RunConfig, cheapest, compute, formula_value
from .crosscheck import Outcome, crosscheck
from .golden import TABLE_NAMES, GoldenRow, GoldenTable, load_table
from .records import COLUMNS, CountRecord, serialize
from .runner import count_records, table_records

__all__ = [
    "KINDS", "METHODS", "NotApplicable", "RunConfig", "cheapest", "compute", "formula_value",
    "Outcome", "crosscheck", "TABLE_NAMES", "GoldenRow", "GoldenTable", "load_table",
    "COLUMNS", "CountRecord", "serialize", "count_records", "table_records",
]
