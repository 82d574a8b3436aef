import csv
import io
import json

import pytest

from continuants.harness import (
    COLUMNS,
    CountRecord,
    NotApplicable,
    RunConfig,
    cheapest,
    compute,
    count_records,
    crosscheck,
    load_table,
    serialize,
    table_records,
)
from continuants.harness.cache import ResultCache, cache_key
from continuants.harness.cli import main
from continuants.harness.golden import TABLE_NAMES
from continuants.rings import build_ring


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# ------------------------------------------------------------- ring info


def test_ring_info_examples():
    code, out = run("ring", "info", "Zmod:12")
    assert code == 0 and "is_local: false" in out
    code, out = run("ring", "info", "Zmod:27")
    assert "q: 3" in out and "units: 18" in out
    code, out = run("ring", "info", "Bivar:Zmod:2/x^2,y^2")
    assert "size: 16" in out and "is_local: true" in out


def test_ring_info_bad_spec():
    assert run("ring", "info", "Foo:3")[0] == 2
    assert run("ring", "info", "PolyQuot:Zmod:4/2*x")[0] == 2


# ----------------------------------------------------------------- count


@pytest.mark.parametrize("method", ["dp", "auto", "formula"])
def test_count_roots_gf16(method):
    code, out = run("count", "roots", "--ring", "GF:2^4", "--n", "8", "--method", method)
    (row,) = csv_rows(out)
    assert code == 0 and row["value"] == "252645135"


def test_count_quiddity_z16():
    code, out = run("count", "quiddity", "--ring", "Zmod:16", "--n", "8", "--method", "dp")
    assert code == 0 and csv_rows(out)[0]["value"] == "1452032"


@pytest.mark.parametrize("spec", ["Zmod:12", "GF:3^2", "Bivar:Zmod:2/x^2,y^2"])
def test_count_n_one(spec):
    code, out = run("count", "roots", "--ring", spec, "--n", "1", "--target", "1")
    assert code == 0 and csv_rows(out)[0]["value"] == "1"


def test_method_all_agrees():
    code, out = run("count", "roots", "--ring", "Zmod:8", "--n", "4", "--method", "all")
    rows = csv_rows(out)
    assert code == 0
    assert [r["method"] for r in rows] == ["formula", "dp", "brute"]
    assert {r["value"] for r in rows} == {"320"}
    assert {r["status"] for r in rows} == {"agree"}


def test_method_all_reports_skips():
    # a tight brute budget skips brute; formula (via components) and dp still agree
    code, out = run("--budget-brute", "10", "count", "quiddity", "--ring", "Zmod:12", "--n", "4",
                    "--method", "all", "--target", "5")
    rows = csv_rows(out)
    assert code == 0
    assert rows[-1]["status"].startswith("skipped")
    assert rows[0]["value"] == rows[1]["value"]


def test_sum_w_count():
    code, out = run("count", "sum-w", "--ring", "GF:2^1", "--n", "4", "--method", "all")
    assert code == 0 and {r["value"] for r in csv_rows(out)} == {"3"}


def test_count_non_unit_quiddity_is_usage_error():
    assert run("count", "quiddity", "--ring", "Zmod:8", "--n", "4", "--target", "2")[0] == 2


def test_count_budget_exhausted():
    code, out = run("count", "roots", "--ring", "Zmod:27", "--n", "7", "--method", "brute",
                    "--budget-brute", "1000")
    assert code == 2 and "skipped" in out


def test_count_formats():
    code, out = run("count", "roots", "--ring", "Zmod:4", "--n", "4", "--format", "json")
    (obj,) = json.loads(out)
    assert list(obj) == list(COLUMNS) and obj["value"] == 40 and obj["expected"] is None
    code, out = run("count", "roots", "--ring", "Zmod:4", "--n", "4", "--format", "md")
    assert out.splitlines()[0] == "| " + " | ".join(COLUMNS) + " |"


def test_global_flags_after_subcommand():
    a = run("--budget-sl2", "4", "count", "roots", "--ring", "Zmod:9", "--n", "3", "--method", "dp")
    b = run("count", "roots", "--ring", "Zmod:9", "--n", "3", "--method", "dp", "--budget-sl2", "4")
    assert a == b and a[0] == 2


def test_non_positive_budget_rejected():
    with pytest.raises(SystemExit) as info:
        run("--budget-brute", "0", "ring", "info", "Zmod:4")
    assert info.value.code == 2


# ----------------------------------------------------------------- table


def test_table_names_and_sizes():
    sizes = {name: len(load_table(name).rows) for name in TABLE_NAMES}
    assert sizes["roots-a"] == 60
    for name in TABLE_NAMES:
        table = load_table(name)
        assert table.provenance and all(r.expected > 0 for r in table.rows)


def test_table_w_minus():
    code, out = run("table", "--name", "w-minus", "--format", "csv")
    rows = csv_rows(out)
    assert code == 0 and {r["status"] for r in rows} == {"pass"}
    cell = [r for r in rows if r["ring"] == "Zmod:27" and r["n"] == "6"]
    assert cell[0]["value"] == "27459"


def test_table_roots_exotic():
    code, out = run("table", "--name", "roots-exotic", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and all(r["status"] == "pass" for r in rows)
    cell = [r for r in rows if r["ring"].startswith("Bivar") and r["n"] == 5]
    assert cell[0]["value"] == 45056


def test_table_unknown_name():
    with pytest.raises(SystemExit):
        run("table", "--name", "nope")


def test_table_mismatch_exits_one(monkeypatch):
    from continuants.harness import runner

    real = runner.load_table

    def doctored(name):
        t = real(name)
        row = t.rows[0]
        t.rows[0] = type(row)(row.ring, row.n, row.kind, row.target, row.expected + 1)
        return t

    monkeypatch.setattr(runner, "load_table", doctored)
    code, out = run("table", "--name", "w-plus")
    assert code == 1 and csv_rows(out)[0]["status"] == "FAIL"


def test_table_budget_skips_are_per_cell():
    cfg = RunConfig(brute_budget=10, sl2_max_ring=4)
    recs = table_records("w-plus", cfg, method="dp")
    assert all(r.status.startswith("skipped") for r in recs)
    assert len(recs) == len(load_table("w-plus").rows)


def test_workers_do_not_change_output():
    one = run("table", "--name", "roots-b", "--format", "csv")
    two = run("--workers", "2", "table", "--name", "roots-b", "--format", "csv")
    assert one == two and one[0] == 0


def test_cache_round_trip(tmp_path):
    path = tmp_path / "cache.json"
    first = run("--cache", str(path), "table", "--name", "w-plus")
    stored = json.loads(path.read_text())
    assert len(stored) == len(load_table("w-plus").rows)
    assert all(isinstance(v, str) and v.isdigit() for v in stored.values())
    assert run("--cache", str(path), "table", "--name", "w-plus") == first


def test_cache_key_and_values(tmp_path):
    c = ResultCache(tmp_path / "c.json")
    key = cache_key("Zmod:4", 40, "roots", "0", "dp")
    c.put(key, 4 ** 40)
    c.save()
    assert ResultCache(tmp_path / "c.json").get(key) == 4 ** 40
    assert key == "Zmod:4|40|roots|0|dp"


# ------------------------------------------------------------ crosscheck


def test_crosscheck_z8_all_pass():
    code, out = run("crosscheck", "--ring", "Zmod:8", "--max-n", "5")
    lines = out.splitlines()[1:]
    assert code == 0 and lines and all(l.startswith("PASS") for l in lines)


def test_crosscheck_z12_skips_local_checks():
    code, out = run("crosscheck", "--ring", "Zmod:12", "--max-n", "4")
    skips = [l for l in out.splitlines() if l.startswith("SKIP")]
    assert code == 0 and skips and all("non-local" in l for l in skips)
    assert not [l for l in out.splitlines() if l.startswith("FAIL")]


def test_crosscheck_f3():
    results = crosscheck(build_ring("GF:3^1"), 6)
    assert all(r.status == "PASS" for r in results)
    assert any(r.name == "formula-vs-dp" for r in results)


# ------------------------------------------------------- compute layer


def test_compute_dispatch():
    z8 = build_ring("Zmod:8")
    assert compute("roots", z8, 4, 0, "formula") == compute("roots", z8, 4, 0, "dp") == 320
    assert cheapest("quiddity", z8, 6, 7) == ("formula", 800)


def test_formula_not_applicable_off_local():
    ring = build_ring("Prod:Zmod:4;Zmod:4")
    # product of local factors decomposes
    assert compute("roots", ring, 3, 0, "formula") == compute("roots", ring, 3, 0, "dp")
    with pytest.raises(NotApplicable):
        compute("roots", build_ring("Bivar:Zmod:6/x^2,y^2"), 3, 0, "formula")


def test_method_agreement_random_cells():
    for spec in ["Zmod:10", "Zmod:18", "Prod:Zmod:3;GF:2^2", "PolyQuot:Zmod:9/x^2,3*x"]:
        ring = build_ring(spec)
        for n in range(1, 6):
            for target in range(0, ring.size, 3):
                recs = count_records(spec, n, "roots", ring.format(target), "all")
                vals = {r.value for r in recs if r.value is not None}
                assert len(vals) == 1, (spec, n, target, recs)


def test_record_validation_and_serialization():
    with pytest.raises(ValueError):
        CountRecord("Zmod:4", 3, "roots", "0", "dp", -1, None, "ok")
    r = CountRecord("Zmod:4", 3, "roots", "0", "dp", 12, 12, "pass")
    assert serialize([r], "csv") == "ring,n,kind,target,method,value,expected,status\nZmod:4,3,roots,0,dp,12,12,pass\n"
    assert json.loads(serialize([r], "json"))[0]["value"] == 12


def test_run_config_rejects_zero():
    with pytest.raises(ValueError):
        RunConfig(workers=0)
