"""Turn (ring, n, kind, target, method) cells into CountRecords."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .. import enumeration as E
from .. import formulas as F
from ..rings import build_ring, parse_spec
from .cache import ResultCache, cache_key
from .compute import METHODS, NotApplicable, RunConfig, compute
from .golden import load_table
from .records import CountRecord


def canonical(spec_text):
    return str(parse_spec(spec_text))


def _attempt(kind, ring, n, x, method, cfg):
    try:
        return compute(kind, ring, n, x, method, cfg), None
    except (NotApplicable, E.BudgetExceeded, F.DomainError) as exc:
        return None, f"skipped: {exc}"


def evaluate(ring_text, n, kind, target, method, cfg, cache=None):
    """List of (method, value or None, note).  ``method`` may be a single
    method, 'auto' (first applicable of formula, dp, brute) or 'all'."""
    name = canonical(ring_text)
    ring = build_ring(parse_spec(name), cfg.ring_cap)
    x = ring.element(target) if target != "" else ring.zero
    order = METHODS if method in ("auto", "all") else (method,)
    out = []
    for m in order:
        key = cache_key(name, n, kind, target, m)
        v = cache.get(key) if cache else None
        note = None
        if v is None:
            v, note = _attempt(kind, ring, n, x, m, cfg)
            if v is not None and cache is not None:
                cache.put(key, v)
        out.append((m, v, note))
        if method == "auto" and v is not None:
            return out[-1:]
    if method == "auto":
        return [("auto", None, "; ".join(note for _, _, note in out))]
    return out


def count_records(ring_text, n, kind, target, method="auto", cfg=None, cache=None):
    cfg = cfg or RunConfig()
    name = canonical(ring_text)
    results = evaluate(name, n, kind, target, method, cfg, cache)
    values = {v for _, v, _ in results if v is not None}
    recs = []
    for m, v, note in results:
        if note:
            status = note
        elif method == "all":
            status = "agree" if len(values) == 1 else "disagree"
        else:
            status = "ok"
        recs.append(CountRecord(name, n, kind, target, m, v, None, status))
    return recs


def _table_cell(args):
    row, method, cfg = args
    (m, v, note), = evaluate(row.ring, row.n, row.kind, row.target, method, cfg)
    return m, v, note


def table_records(name, cfg=None, cache=None, method="auto"):
    """Recompute every cell of a golden table, by default with the cheapest
    applicable method, and compare with the published value."""
    if method not in ("auto",) + METHODS:
        raise ValueError(f"unknown method {method!r}")
    cfg = cfg or RunConfig()
    table = load_table(name)
    results = [None] * len(table.rows)
    todo = []
    for i, row in enumerate(table.rows):
        for m in (METHODS if method == "auto" else (method,)):
            v = cache.get(cache_key(row.ring, row.n, row.kind, row.target, m)) if cache else None
            if v is not None:
                results[i] = (m, v, None)
                break
        else:
            todo.append(i)
    jobs = [(table.rows[i], method, cfg) for i in todo]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            done = list(pool.map(_table_cell, jobs))
    else:
        done = [_table_cell(j) for j in jobs]
    for i, res in zip(todo, done):
        results[i] = res
        row = table.rows[i]
        if cache is not None and res[1] is not None:
            cache.put(cache_key(row.ring, row.n, row.kind, row.target, res[0]), res[1])
    recs = []
    for row, (m, v, note) in zip(table.rows, results):
        if v is None:
            status = note
        else:
            status = "pass" if v == row.expected else "FAIL"
        recs.append(CountRecord(row.ring, row.n, row.kind, row.target, m, v, row.expected, status))
    return recs


def open_cache(cfg):
    return ResultCache(cfg.cache) if cfg.cache else None
