"""Exact counts of continuant roots and of tuples with a prescribed M_n.

Two independent routes:

* brute force -- walk the tuple tree of A^n depth first, carrying the rolling
  pair (K_{k-1}, K_k) (or the whole 2x2 product for matrix targets), with each
  level vectorized over a bounded block of prefixes;
* transfer-matrix DP -- a count vector over SL_2(A), pushed n times through
  the permutations M -> E(a) M for every a in A.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

BRUTE_BUDGET = 10**8
SL2_MAX_RING = 64
_BLOCK = 1 << 18


class BudgetExceeded(RuntimeError):
    pass


# ------------------------------------------------------------------ SL_2(A)


class SL2Table:
    """All 2x2 matrices of determinant 1 over a ring, densely indexed.

    ``matrices[i] = (a11, a12, a21, a22)``; ``steps[a][i]`` is the index of
    E(a) @ matrices[i] and ``pulls[a]`` its inverse permutation.
    """

    def __init__(self, ring, matrices, codes):
        self.ring = ring
        self.matrices = matrices
        self._codes = codes
        n = ring.size
        m11, m12, m21, m22 = matrices.T
        self.steps = np.empty((n, len(matrices)), dtype=np.int64)
        for a in range(n):
            img = (ring.sub(ring.mul(a, m11), m21), ring.sub(ring.mul(a, m12), m22), m11, m12)
            self.steps[a] = self._lookup(self._encode(*img))
        self.pulls = np.argsort(self.steps, axis=1)
        self.identity = self.index_of((ring.one, ring.zero, ring.zero, ring.one))
        # group indices by top-left entry, for summing over K_n = a
        self._by_corner = np.argsort(m11, kind="stable")
        self._corner_bounds = np.searchsorted(m11[self._by_corner], np.arange(n + 1))

    def __len__(self):
        return len(self.matrices)

    def _encode(self, a11, a12, a21, a22):
        n = self.ring.size
        return ((np.asarray(a11) * n + a12) * n + a21) * n + a22

    def _lookup(self, codes):
        idx = np.searchsorted(self._codes, codes)
        if np.any(idx >= len(self._codes)) or np.any(self._codes[np.minimum(idx, len(self._codes) - 1)] != codes):
            raise KeyError("matrix not in SL_2")
        return idx

    def index_of(self, M):
        """Index of a matrix given as (a11, a12, a21, a22)."""
        return int(self._lookup(np.asarray([int(self._encode(*M))]))[0])

    def corner_sums(self, counts):
        """Per ring element a: the sum of counts over matrices with a11 = a."""
        ordered = counts[self._by_corner]
        b = self._corner_bounds
        return [sum(ordered[b[a]:b[a + 1]].tolist()) for a in range(self.ring.size)]


@lru_cache(maxsize=16)
def _build_sl2_cached(ring):
    n = ring.size
    xs = np.arange(n, dtype=np.int64)
    b, c, d = (g.ravel() for g in np.meshgrid(xs, xs, xs, indexing="ij"))
    bc = ring.mul(b, c)
    rows = []
    for a in range(n):
        ok = ring.sub(ring.mul(a, d), bc) == ring.one
        rows.append(np.stack([np.full(int(ok.sum()), a), b[ok], c[ok], d[ok]], axis=1))
    matrices = np.concatenate(rows).astype(np.int64)
    codes = ((matrices[:, 0] * n + matrices[:, 1]) * n + matrices[:, 2]) * n + matrices[:, 3]
    return SL2Table(ring, matrices, codes)


def build_sl2(ring, max_ring=None) -> SL2Table:
    """Scan all |A|^4 candidate matrices and keep those of determinant 1."""
    limit = SL2_MAX_RING if max_ring is None else max_ring
    if ring.size > limit:
        raise BudgetExceeded(f"SL_2 scan of {ring.name} needs |A| <= {limit}")
    return _build_sl2_cached(ring)


# ----------------------------------------------------------------------- DP


def _count_dtype(ring, n):
    return np.int64 if ring.size ** n < 2**62 else object


def dp_rounds(ring, n, max_ring=None):
    """Yield the count vector after each of the rounds 1..n."""
    table = build_sl2(ring, max_ring)
    dtype = _count_dtype(ring, n)
    counts = np.zeros(len(table), dtype=dtype)
    counts[table.identity] = 1
    for _ in range(n):
        nxt = np.zeros(len(table), dtype=dtype)
        for pull in table.pulls:
            nxt += counts[pull]
        counts = nxt
        yield counts


@lru_cache(maxsize=64)
def _dp_cached(ring, n, max_ring):
    for counts in dp_rounds(ring, n, max_ring):
        pass
    counts.flags.writeable = False
    return counts


def count_matrix_targets_dp(ring, n, max_ring=None):
    """Count vector c with c[index_of(B)] = |{t in A^n : M_n(t) = B}|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _dp_cached(ring, n, SL2_MAX_RING if max_ring is None else max_ring)


@lru_cache(maxsize=64)
def _dp_roots(ring, n, max_ring):
    table = build_sl2(ring, max_ring)
    return tuple(table.corner_sums(count_matrix_targets_dp(ring, n, max_ring)))


# -------------------------------------------------------------- brute force


def _check_budget(ring, n, budget):
    limit = BRUTE_BUDGET if budget is None else budget
    if ring.size ** n > limit:
        raise BudgetExceeded(f"brute force needs {ring.size}^{n} leaves over {ring.name}, budget {limit}")


def _walk(ring, n, state, extend, leaf, block=_BLOCK):
    """Depth-first over the tuple tree; ``state`` is a tuple of arrays, one
    entry per prefix, and each level expands a bounded block of prefixes."""
    elems = np.arange(ring.size, dtype=np.int64)

    def go(st, depth):
        if depth == n:
            leaf(st)
            return
        m = len(st[0])
        step = max(1, block // ring.size)
        for lo in range(0, m, step):
            part = tuple(s[lo:lo + step] for s in st)
            k = len(part[0])
            a = np.repeat(elems, k)
            go(extend(a, tuple(np.tile(s, ring.size) for s in part)), depth + 1)

    go(state, 0)


@lru_cache(maxsize=64)
def _brute_roots(ring, n, budget):
    _check_budget(ring, n, budget)
    hist = np.zeros(ring.size, dtype=np.int64)

    def extend(a, st):
        prev, cur = st
        return cur, ring.sub(ring.mul(a, cur), prev)

    def leaf(st):
        hist[:] += np.bincount(st[1], minlength=ring.size)

    start = (np.array([ring.zero]), np.array([ring.one]))
    _walk(ring, n, start, extend, leaf)
    return tuple(int(h) for h in hist)


@lru_cache(maxsize=64)
def _brute_diagonal(ring, n, budget):
    """Per element u: number of tuples with M_n = diag(u, u^-1) (0 off units)."""
    _check_budget(ring, n, budget)
    hist = np.zeros(ring.size, dtype=np.int64)
    inverse = ring.inverse

    def extend(a, st):
        p, q, r, s = st
        return ring.sub(ring.mul(a, p), r), ring.sub(ring.mul(a, q), s), p, q

    def leaf(st):
        p, q, r, s = st
        hit = (q == ring.zero) & (r == ring.zero) & ring.unit_mask[p]
        hit &= inverse[p] == s
        hist[:] += np.bincount(p[hit], minlength=ring.size)

    one = lambda v: np.array([v])
    _walk(ring, n, (one(ring.one), one(ring.zero), one(ring.zero), one(ring.one)), extend, leaf)
    return tuple(int(h) for h in hist)


def brute_matrix_count(ring, n, B, budget=None):
    """|{t in A^n : M_n(t) = B}| for an arbitrary 2x2 matrix B."""
    _check_budget(ring, n, budget)
    total = [0]
    target = tuple(int(x) for x in B)

    def extend(a, st):
        p, q, r, s = st
        return ring.sub(ring.mul(a, p), r), ring.sub(ring.mul(a, q), s), p, q

    def leaf(st):
        hit = np.ones(len(st[0]), dtype=bool)
        for arr, v in zip(st, target):
            hit &= arr == v
        total[0] += int(hit.sum())

    one = lambda v: np.array([v])
    _walk(ring, n, (one(ring.one), one(ring.zero), one(ring.zero), one(ring.one)), extend, leaf)
    return total[0]


# ------------------------------------------------------------ public counts

METHODS = ("brute", "dp")


def roots_by_target(ring, n, method="dp", budget=None, max_ring=None):
    """List whose entry a is |R_n^a(A)| = |{t : K_n(t) = a}|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if method == "brute":
        return list(_brute_roots(ring, n, budget))
    if method == "dp":
        return list(_dp_roots(ring, n, SL2_MAX_RING if max_ring is None else max_ring))
    raise ValueError(f"unknown method {method!r}")


def count_roots(ring, n, a, method="dp", budget=None, max_ring=None):
    """|R_n^a(A)|; r_n(A) is the case a = 0."""
    return roots_by_target(ring, n, method, budget, max_ring)[int(a)]


def count_omega(ring, n, B, method="dp", budget=None, max_ring=None):
    """|Omega_n^B(A)| for any 2x2 matrix B = (a11, a12, a21, a22)."""
    if method == "brute":
        return brute_matrix_count(ring, n, B, budget)
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    table = build_sl2(ring, max_ring)
    try:
        i = table.index_of(B)
    except KeyError:
        return 0
    return int(count_matrix_targets_dp(ring, n, max_ring)[i])


def quiddity_by_unit(ring, n, method="dp", budget=None, max_ring=None):
    """List whose entry u is w_n^u(A) for units u and 0 for non-units."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if method == "brute":
        return list(_brute_diagonal(ring, n, budget))
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    table = build_sl2(ring, max_ring)
    counts = count_matrix_targets_dp(ring, n, max_ring)
    out = [0] * ring.size
    for u in np.flatnonzero(ring.unit_mask):
        i = table.index_of((int(u), ring.zero, ring.zero, int(ring.inverse[u])))
        out[int(u)] = int(counts[i])
    return out


def count_quiddity(ring, n, u, method="dp", budget=None, max_ring=None):
    """w_n^u(A): tuples with M_n = diag(u, u^-1); u must be a unit."""
    if not ring.is_unit(u):
        raise ValueError(f"{ring.format(u)} is not a unit of {ring.name}")
    return quiddity_by_unit(ring, n, method, budget, max_ring)[int(u)]


def sum_w_over_units(ring, n, method="dp", budget=None, max_ring=None):
    return sum(quiddity_by_unit(ring, n, method, budget, max_ring))
