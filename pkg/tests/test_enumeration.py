import itertools

import numpy as np
import pytest

import oracles as O
from continuants import enumeration as E
from continuants.rings import build_ring

ORACLE_RINGS = ["GF:2^1", "GF:3^1", "GF:2^2", "Zmod:4", "Zmod:6", "Zmod:8", "Zmod:9",
                "PolyQuot:GF:2^1/x^2", "PolyQuot:Zmod:4/x^2,2*x", "Prod:Zmod:2;GF:2^2"]


def _max_n(ring, limit=5000):
    n = 1
    while ring.size ** (n + 1) <= limit:
        n += 1
    return n


@pytest.mark.parametrize("spec", ORACLE_RINGS)
def test_counts_match_oracle(spec):
    ring, R = build_ring(spec), O.oracle_for(spec)
    iso = O.isomorphism(ring, R)
    for n in range(1, _max_n(ring) + 1):
        hist = O.root_histogram(R, n)
        w = O.quiddity_counts(R, n)
        for method in ("brute", "dp"):
            roots = E.roots_by_target(ring, n, method)
            assert {iso[a]: c for a, c in enumerate(roots)} == hist
            quid = E.quiddity_by_unit(ring, n, method)
            assert {iso[u]: quid[u] for u in range(ring.size) if ring.is_unit(u)} == w


@pytest.mark.parametrize("spec", ORACLE_RINGS)
def test_sl2_size_matches_oracle(spec):
    ring = build_ring(spec)
    assert len(E.build_sl2(ring)) == O.sl2_size(O.oracle_for(spec))


def test_sl2_examples():
    assert len(E.build_sl2(build_ring("GF:2^1"))) == 6
    assert len(E.build_sl2(build_ring("Zmod:4"))) == 48
    assert len(E.build_sl2(build_ring("GF:2^2"))) == 60
    # q(q^2 - 1) for fields
    for q, spec in [(5, "GF:5^1"), (8, "GF:2^3"), (9, "GF:3^2")]:
        assert len(E.build_sl2(build_ring(spec))) == q * (q * q - 1)


@pytest.mark.parametrize("spec", ["Zmod:9", "Bivar:Zmod:2/x^2,y^2", "Zmod:12"])
def test_steps_are_permutations(spec):
    table = E.build_sl2(build_ring(spec))
    S = len(table)
    for a, step in enumerate(table.steps):
        assert np.array_equal(np.sort(step), np.arange(S))
        assert np.array_equal(step[table.pulls[a]], np.arange(S))


def test_dp_single_round():
    ring = build_ring("Zmod:7")
    counts = E.count_matrix_targets_dp(ring, 1)
    assert sorted(counts[counts != 0].tolist()) == [1] * 7


@pytest.mark.parametrize("spec", ["GF:2^1", "Zmod:6", "PolyQuot:Zmod:4/x^2+x+1"])
def test_dp_conservation(spec):
    ring = build_ring(spec)
    for k, counts in enumerate(E.dp_rounds(ring, 7), 1):
        assert sum(counts.tolist()) == ring.size ** k


def test_big_integer_counts():
    # 4^40 overflows int64; the DP switches to Python integers
    ring = build_ring("Zmod:4")
    counts = E.count_matrix_targets_dp(ring, 40)
    assert counts.dtype == object
    assert sum(counts.tolist()) == 4 ** 40
    assert sum(E.roots_by_target(ring, 40)) == 4 ** 40


def test_published_examples():
    f2, z4 = build_ring("GF:2^1"), build_ring("Zmod:4")
    for method in ("brute", "dp"):
        assert E.count_roots(f2, 3, 0, method) == 3
        assert E.count_roots(z4, 4, 0, method) == 40
    z8, z9 = build_ring("Zmod:8"), build_ring("Zmod:9")
    assert E.count_quiddity(z8, 4, 1) == 20
    assert E.count_quiddity(z9, 4, z9.element("-1")) == 6
    assert E.count_quiddity(z8, 6, 7, "brute") == 800
    assert E.count_quiddity(z8, 6, 7, "dp") == 800


def test_dp_worked_examples():
    f2 = build_ring("GF:2^1")
    table = E.build_sl2(f2)
    assert E.count_matrix_targets_dp(f2, 3)[table.identity] == 1
    assert E.count_matrix_targets_dp(f2, 5)[table.identity] == 5


def test_sum_w_examples():
    assert E.sum_w_over_units(build_ring("GF:2^1"), 3) == 1
    assert E.sum_w_over_units(build_ring("GF:3^1"), 3) == 2
    assert E.sum_w_over_units(build_ring("GF:2^1"), 4) == 3


@pytest.mark.parametrize("spec", ["Zmod:5", "Zmod:12", "Bivar:Zmod:2/x^2,y^2"])
def test_trivial_counts(spec):
    ring = build_ring(spec)
    assert E.roots_by_target(ring, 1) == [1] * ring.size
    assert E.count_roots(ring, 2, ring.zero) == ring.n_units


LOCAL = ["GF:2^2", "Zmod:8", "Zmod:9", "PolyQuot:GF:2^2/x^2", "Bivar:Zmod:2/x^2,y^2",
         "PolyQuot:Zmod:4/x^2,2*x", "Zmod:27"]


@pytest.mark.parametrize("spec", LOCAL)
def test_nonunit_targets_share_counts(spec):
    ring = build_ring(spec)
    non = np.flatnonzero(~ring.unit_mask)
    for n in range(2, 7):
        r = E.roots_by_target(ring, n)
        assert {r[a] for a in non} == {r[ring.zero]}


def test_nonunit_sharing_fails_off_local():
    # Z/6 is not local: targets 2 and 3 are both non-units with different counts
    r = E.roots_by_target(build_ring("Zmod:6"), 3)
    assert r[2] != r[3]


@pytest.mark.parametrize("spec", LOCAL + ["Zmod:12", "Prod:Zmod:2;GF:2^2"])
def test_unit_targets_and_omega(spec):
    ring = build_ring(spec)
    ident = (ring.one, ring.zero, ring.zero, ring.one)
    for n in range(1, 6):
        r = E.roots_by_target(ring, n)
        for u in np.flatnonzero(ring.unit_mask):
            u = int(u)
            ui = ring.inv(u)
            B = (ring.neg(ui), ring.zero, ring.zero, ring.neg(u))
            assert r[u] == E.count_omega(ring, n + 2, B)
            if n % 2:
                assert r[u] == E.count_omega(ring, n + 2, ident)


@pytest.mark.parametrize("spec", LOCAL + ["Zmod:12", "Zmod:10"])
def test_every_target_hit_and_partition(spec):
    ring = build_ring(spec)
    for n in range(1, 7):
        r = E.roots_by_target(ring, n)
        assert min(r) >= 1
        assert sum(r) == ring.size ** n


@pytest.mark.parametrize("spec", ["Zmod:6", "GF:2^2", "Zmod:8"])
def test_omega_brute_vs_dp_every_matrix(spec):
    ring = build_ring(spec)
    table = E.build_sl2(ring)
    counts = E.count_matrix_targets_dp(ring, 4)
    for i, M in enumerate(table.matrices):
        if i % 7 == 0:
            assert E.count_omega(ring, 4, tuple(int(x) for x in M), "brute") == counts[i]


def test_omega_outside_sl2_is_zero():
    ring = build_ring("Zmod:6")
    B = (2, 0, 0, 2)  # det 4
    assert E.count_omega(ring, 3, B) == 0
    assert E.count_omega(ring, 3, B, "brute") == 0


def test_budgets():
    ring = build_ring("Zmod:27")
    with pytest.raises(E.BudgetExceeded):
        E.count_roots(ring, 6, 0, "brute", budget=10**6)
    with pytest.raises(E.BudgetExceeded):
        E.count_roots(build_ring("Zmod:13"), 3, 0, "dp", max_ring=12)
    # r_3(F_q) = q^2 - q + 1
    assert E.count_roots(build_ring("Zmod:13"), 3, 0, "dp", max_ring=13) == 13 * 13 - 13 + 1


def test_quiddity_needs_unit():
    with pytest.raises(ValueError):
        E.count_quiddity(build_ring("Zmod:8"), 4, 2)


def test_unknown_method():
    with pytest.raises(ValueError):
        E.roots_by_target(build_ring("Zmod:3"), 2, "magic")


def test_brute_blocks_do_not_change_counts():
    ring = build_ring("Zmod:5")
    want = O.root_histogram(O.ZmodOracle(5), 5)
    hist = np.zeros(5, dtype=np.int64)

    def extend(a, st):
        prev, cur = st
        return cur, ring.sub(ring.mul(a, cur), prev)

    def leaf(st):
        hist[:] += np.bincount(st[1], minlength=5)

    E._walk(ring, 5, (np.array([0]), np.array([1])), extend, leaf, block=7)
    assert dict(enumerate(hist.tolist())) == want


def test_brute_roots_exhaustive_small():
    ring = build_ring("Zmod:3")
    for n in range(1, 6):
        counts = [0] * 3
        for t in itertools.product(range(3), repeat=n):
            prev, cur = 0, 1
            for a in t:
                prev, cur = cur, (a * cur - prev) % 3
            counts[cur] += 1
        assert E.roots_by_target(ring, n, "brute") == counts
