"""Run every invariant we know on one ring and report pass / fail / skip.

Each check returns (status, detail) where status is PASS, FAIL or SKIP and
detail names a counterexample on failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import continuant as C
from .. import enumeration as E
from .. import formulas as F
from .compute import NotApplicable, RunConfig, formula_value

_EXHAUSTIVE = 200_000
_SAMPLES = 2_000


@dataclass
class Outcome:
    name: str
    status: str
    detail: str = ""

    def line(self):
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


class _Skip(Exception):
    pass


def _all_tuples(ring, n, limit=_EXHAUSTIVE):
    """n index arrays enumerating A^n, or None when that is too many."""
    if ring.size ** n > limit:
        return None
    grids = np.meshgrid(*[np.arange(ring.size)] * n, indexing="ij")
    return [g.ravel() for g in grids]


def _tuples(ring, n, rng, limit=_EXHAUSTIVE, samples=_SAMPLES):
    """All of A^n when small enough, else a random sample."""
    full = _all_tuples(ring, n, limit)
    if full is not None:
        return full
    return [rng.integers(0, ring.size, samples) for _ in range(n)]


def _first_bad(ok, cols, ring):
    i = int(np.flatnonzero(~np.asarray(ok))[0])
    return "(" + ", ".join(ring.format(int(c[i])) for c in cols) + ")"


class Checker:
    def __init__(self, ring, max_n, cfg=None, seed=0):
        self.ring = ring
        self.max_n = max_n
        self.cfg = cfg or RunConfig()
        self.rng = np.random.default_rng(seed)

    # helpers

    def _dp_roots(self, n):
        return E.roots_by_target(self.ring, n, "dp", max_ring=self.cfg.sl2_max_ring)

    def _dp_w(self, n):
        return E.quiddity_by_unit(self.ring, n, "dp", max_ring=self.cfg.sl2_max_ring)

    def _need_local(self):
        if not self.ring.is_local:
            raise _Skip("non-local ring")
        return F.LocalParams.from_ring(self.ring)

    def _units(self):
        return [int(u) for u in np.flatnonzero(self.ring.unit_mask)]

    # continuant identities

    def entry_identity(self):
        ring = self.ring
        for n in range(1, self.max_n + 1):
            t = _tuples(ring, n, self.rng)
            M = C.m_matrix(ring, t)
            inner = ring.zero if n == 1 else C.continuant(ring, t[1:-1])
            want = (C.continuant(ring, t), ring.neg(C.continuant(ring, t[1:])),
                    C.continuant(ring, t[:-1]), ring.neg(inner))
            ok = np.ones(len(t[0]), dtype=bool)
            for got, exp in zip(M, want):
                ok &= np.asarray(got == exp)
            ok &= np.asarray(C.det(ring, M) == ring.one)
            if not ok.all():
                return "FAIL", _first_bad(ok, t, ring)
        return "PASS", ""

    def reversal(self):
        ring = self.ring
        for n in range(1, self.max_n + 1):
            t = _tuples(ring, n, self.rng)
            ok = C.continuant(ring, t) == C.continuant(ring, t[::-1])
            if n >= 2:
                left = ring.sub(ring.mul(t[0], C.continuant(ring, t[1:])), C.continuant(ring, t[2:]))
                ok &= C.continuant(ring, t) == left
            if not np.all(ok):
                return "FAIL", _first_bad(ok, t, ring)
        return "PASS", ""

    def reductions(self):
        ring = self.ring
        one, zero = ring.one, ring.zero
        a, b = _tuples(ring, 2, self.rng)
        lhs = C.m_matrix(ring, [a, np.full_like(a, one), b])
        rhs = C.m_matrix(ring, [ring.sub(a, one), ring.sub(b, one)])
        if not C.mat_equal(lhs, rhs):
            return "FAIL", "one-removal"
        lhs = C.m_matrix(ring, [a, np.full_like(a, zero), b])
        if not C.mat_equal(lhs, C.mat_neg(ring, C.m_matrix(ring, [ring.add(a, b)]))):
            return "FAIL", "zero-removal"
        # the scalar checks are slow, so these stay small
        for t in zip(*_tuples(ring, 4, self.rng, 10 * _SAMPLES)):
            if C.check_four_to_three(ring, *map(int, t)) is False:
                return "FAIL", f"four-to-three at {tuple(map(ring.format, t))}"
        for t in zip(*_tuples(ring, 5, self.rng, _SAMPLES)):
            if C.check_five_to_three(ring, *map(int, t)) is False:
                return "FAIL", f"five-to-three at {tuple(map(ring.format, t))}"
        return "PASS", ""

    def alternate_scaling(self):
        ring = self.ring
        tested = 0
        for n in range(1, self.max_n + 1):
            t = _all_tuples(ring, n)
            if t is None:
                break
            M = C.m_matrix(ring, t)
            sel = (M.a12 == ring.zero) & (M.a21 == ring.zero)
            t = [c[sel] for c in t]
            u = M.a11[sel]
            for lam in self._units():
                got = C.m_matrix(ring, C.alternate_scale(ring, t, lam))
                v = u if n % 2 == 0 else ring.mul(lam, u)
                ok = (got.a11 == v) & (got.a12 == ring.zero) & (got.a21 == ring.zero)
                ok &= got.a22 == ring.inverse[v]
                if not ok.all():
                    return "FAIL", f"lambda={ring.format(lam)} at " + _first_bad(ok, t, ring)
            tested = n
        if not tested:
            raise _Skip("A^1 too large to enumerate")
        return "PASS", f"n <= {tested}"

    # counting

    def brute_vs_dp(self):
        ring, done = self.ring, 0
        for n in range(1, self.max_n + 1):
            if ring.size ** n > self.cfg.brute_budget:
                break
            b = E.roots_by_target(ring, n, "brute", budget=self.cfg.brute_budget)
            d = self._dp_roots(n)
            if b != d:
                a = next(i for i in range(ring.size) if b[i] != d[i])
                return "FAIL", f"roots n={n} a={ring.format(a)}: brute {b[a]} dp {d[a]}"
            b = E.quiddity_by_unit(ring, n, "brute", budget=self.cfg.brute_budget)
            d = self._dp_w(n)
            if b != d:
                u = next(i for i in range(ring.size) if b[i] != d[i])
                return "FAIL", f"quiddity n={n} u={ring.format(u)}: brute {b[u]} dp {d[u]}"
            done = n
        if not done:
            raise _Skip("brute force budget")
        return "PASS", f"n <= {done}"

    def dp_conservation(self):
        size = self.ring.size
        for k, counts in enumerate(E.dp_rounds(self.ring, self.max_n + 2, self.cfg.sl2_max_ring), 1):
            if sum(counts.tolist()) != size ** k:
                return "FAIL", f"round {k}"
        return "PASS", ""

    def roots_nonempty(self):
        ring = self.ring
        for n in range(1, self.max_n + 1):
            r = self._dp_roots(n)
            if min(r) < 1:
                return "FAIL", f"n={n} a={ring.format(r.index(min(r)))}"
            if sum(r) != ring.size ** n:
                return "FAIL", f"partition n={n}"
        return "PASS", ""

    def unit_roots_vs_omega(self):
        ring = self.ring
        for n in range(1, self.max_n + 1):
            r = self._dp_roots(n)
            for u in self._units():
                ui = ring.inv(u)
                # -B^-1 for B = diag(u, u^-1)
                B = (ring.neg(ui), ring.zero, ring.zero, ring.neg(u))
                if r[u] != E.count_omega(ring, n + 2, B, max_ring=self.cfg.sl2_max_ring):
                    return "FAIL", f"n={n} u={ring.format(u)}"
                if n % 2 and r[u] != E.count_omega(ring, n + 2, C.identity(ring),
                                                    max_ring=self.cfg.sl2_max_ring):
                    return "FAIL", f"odd n={n} u={ring.format(u)} vs identity"
        return "PASS", ""

    # local rings only

    def nonunit_roots_equal(self):
        self._need_local()
        ring = self.ring
        non = [int(a) for a in np.flatnonzero(~ring.unit_mask)]
        for n in range(2, self.max_n + 1):
            r = self._dp_roots(n)
            bad = [a for a in non if r[a] != r[ring.zero]]
            if bad:
                return "FAIL", f"n={n} a={ring.format(bad[0])}"
        return "PASS", ""

    def local_params(self):
        p = self._need_local()
        if not p.check():
            return "FAIL", f"omega^2 != |U|^2 + 4|A-U||A| for |A|={p.size}"
        q = self.ring.residue_size
        if q * p.nonunits != p.size:
            return "FAIL", f"q={q}"
        return "PASS", f"|A|={p.size} |U|={p.units} q={q} omega={p.omega}"

    def sum_w_closed_form(self):
        p = self._need_local()
        for n in range(3, self.max_n + 3):
            got, want = F.sum_w_local(p, n), sum(self._dp_w(n))
            if got != want:
                return "FAIL", f"n={n}: formula {got} dp {want}"
        return "PASS", ""

    def roots_closed_form(self):
        p = self._need_local()
        for n in range(1, self.max_n + 1):
            want = self._dp_roots(n)[self.ring.zero]
            got = F.roots_local(p, n, sum_w=sum(self._dp_w(n + 2)))
            if got != want:
                return "FAIL", f"n={n}: formula {got} dp {want}"
            if n % 2:
                got = F.roots_local(p, n, w_one=self._dp_w(n + 2)[self.ring.one])
                if got != want:
                    return "FAIL", f"odd n={n} via w^1: formula {got} dp {want}"
        return "PASS", ""

    def residue_lift(self):
        p = self._need_local()
        q = self.ring.residue_size
        tested = 0
        for n in range(3, self.max_n + 3):
            for eps in (1, -1):
                if n % 2 == 0 and ((-1) ** (n // 2) == eps or q % 2 == 0):
                    continue
                u = self.ring.one if eps == 1 else self.ring.neg(self.ring.one)
                got = F.lift_from_residue_field(p, F.w_field(q, n, eps), n, eps)
                want = self._dp_w(n)[u]
                if got != want:
                    return "FAIL", f"n={n} eps={eps}: formula {got} dp {want}"
                tested += 1
        return "PASS", f"{tested} cases"

    def formula_vs_dp(self):
        ring = self.ring
        tested = 0
        for n in range(1, self.max_n + 1):
            roots, w = self._dp_roots(n), self._dp_w(n)
            cells = [("roots", a, roots[a]) for a in range(ring.size)]
            cells += [("quiddity", u, w[u]) for u in self._units()]
            for kind, x, want in cells:
                try:
                    got = formula_value(kind, ring, n, x)
                except NotApplicable:
                    continue
                if got != want:
                    return "FAIL", f"{kind} n={n} target={ring.format(x)}: formula {got} dp {want}"
                tested += 1
        if not tested:
            raise _Skip("no closed form applies")
        return "PASS", f"{tested} cells"


CHECKS = (
    ("entry-identity-and-det", "entry_identity"),
    ("reversal-and-left-recurrence", "reversal"),
    ("reduction-identities", "reductions"),
    ("alternate-scaling", "alternate_scaling"),
    ("brute-vs-dp", "brute_vs_dp"),
    ("dp-conservation", "dp_conservation"),
    ("roots-nonempty-and-partition", "roots_nonempty"),
    ("unit-roots-vs-shifted-omega", "unit_roots_vs_omega"),
    ("nonunit-roots-equal", "nonunit_roots_equal"),
    ("local-params", "local_params"),
    ("sum-w-closed-form", "sum_w_closed_form"),
    ("roots-closed-form", "roots_closed_form"),
    ("residue-lift", "residue_lift"),
    ("formula-vs-dp", "formula_vs_dp"),
)


def crosscheck(ring, max_n, cfg=None):
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    checker = Checker(ring, max_n, cfg)
    out = []
    for name, attr in CHECKS:
        try:
            status, detail = getattr(checker, attr)()
        except _Skip as exc:
            status, detail = "SKIP", str(exc)
        except E.BudgetExceeded as exc:
            status, detail = "SKIP", f"budget: {exc}"
        except (F.DomainError, F.InexactDivision, AssertionError) as exc:
            status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
        out.append(Outcome(name, status, detail))
    return out
