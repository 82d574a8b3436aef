"""One count by one method: brute force, DP, or the closed forms.

The closed-form route recognizes ring families from the ring's spec string (fields,
Z/p^m, F_q[X]/<X^m>), splits Z/N and products into local components, and
falls back to the general local-ring formulas where no family matches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import enumeration as E
from .. import formulas as F
from ..rings import build_ring
from ..rings import spec as S

KINDS = ("roots", "quiddity", "sum_w")
METHODS = ("formula", "dp", "brute")


class NotApplicable(Exception):
    pass


@dataclass
class RunConfig:
    brute_budget: int = E.BRUTE_BUDGET
    sl2_max_ring: int = E.SL2_MAX_RING
    ring_cap: int = 4096
    workers: int = 1
    cache: Optional[str] = None

    def __post_init__(self):
        for name in ("brute_budget", "sl2_max_ring", "ring_cap", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def default_target(kind):
    return {"roots": "0", "quiddity": "1", "sum_w": ""}[kind]


def compute(kind, ring, n, target, method, config=None):
    """``target`` is an element index (ignored for sum_w)."""
    cfg = config or RunConfig()
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if method == "formula":
        return formula_value(kind, ring, n, target)
    if method not in ("dp", "brute"):
        raise ValueError(f"unknown method {method!r}")
    kw = {"budget": cfg.brute_budget, "max_ring": cfg.sl2_max_ring}
    if kind == "roots":
        return E.count_roots(ring, n, target, method, **kw)
    if kind == "quiddity":
        return E.count_quiddity(ring, n, target, method, **kw)
    return E.sum_w_over_units(ring, n, method, **kw)


def cheapest(kind, ring, n, target, config=None):
    """(method, value) from the first of formula, dp, brute that applies."""
    errors = []
    for method in METHODS:
        try:
            return method, compute(kind, ring, n, target, method, config)
        except (NotApplicable, E.BudgetExceeded, F.DomainError) as exc:
            errors.append(f"{method}: {exc}")
    raise NotApplicable("; ".join(errors))


# ------------------------------------------------------------ decomposition


def _components(ring, x):
    """Split (ring, element) into local factors: [(spec, ring, element), ...]."""
    spec = ring.spec
    if isinstance(spec, S.Zmod) and not ring.is_local:
        out = []
        for p, e in S.factorize(spec.N):
            sub = build_ring(S.Zmod(p ** e))
            out += _components(sub, int(x) % p ** e)
        return out
    if isinstance(spec, S.Product):
        out = []
        digits = ring._b.decode(np.asarray(x))
        for f, d in zip(ring._b.factors, digits):
            out += _components(f, int(d))
        return out
    if not ring.is_local:
        raise NotApplicable(f"{ring.name} is neither local nor an explicit product")
    return [(spec, ring, int(x))]


def _family(spec, ring):
    """('field', q, 1) | ('zpm', p, m) | ('truncated', q, m) | None."""
    if isinstance(spec, S.GF):
        return "field", spec.p ** spec.k, 1
    if isinstance(spec, S.Zmod):
        (p, m), = S.factorize(spec.N)
        return ("field", p, 1) if m == 1 else ("zpm", p, m)
    if isinstance(spec, S.PolyQuot) and len(spec.relations) == 1:
        rel, = spec.relations
        base = spec.base
        if len(rel) == 1 and rel[0][1] == 1 and rel[0][0][1] == 0:
            m = rel[0][0][0]
            if isinstance(base, S.GF):
                return "truncated", base.p ** base.k, m
            if isinstance(base, S.Zmod) and S.is_prime(base.N):
                return "truncated", base.N, m
    return None


def _eps(ring, u):
    if u == ring.one:
        return 1
    if u == ring.neg(ring.one):
        return -1
    return None


# -------------------------------------------------------------- formulas


def _local_quiddity(spec, ring, s, u):
    if s == 1:
        return 0
    if s == 2:
        return 1 if u == ring.neg(ring.one) else 0
    params = F.LocalParams.from_ring(ring)
    fam = _family(spec, ring)
    if s % 2:
        if fam and fam[0] == "field":
            return F.w_field(fam[1], s, -1)
        if fam and fam[0] == "zpm":
            p, m = fam[1], fam[2]
            if p == 2 and s >= 5:
                return F.w_two_power_odd(m, s)
            return F.w_prime_power_odd(p, m, s - 2)
        if fam and fam[0] == "truncated":
            return F.w_truncated_poly(fam[1], fam[2], s - 2)
        # odd sizes: w_s^u is the same for every unit u
        return F.exact_div(F.sum_w_local(params, s), params.units)
    eps = _eps(ring, u)
    if eps is None:
        raise NotApplicable("even-size quiddity counts are known only for u = 1 or u = -1")
    if fam and fam[0] == "field":
        return F.w_field(fam[1], s, eps)
    if fam and fam[0] == "zpm":
        p, m = fam[1], fam[2]
        if p == 2 and m == 2:
            return F.w_z4(s, eps)
        if p > 2 or m >= 3:
            if s == 4:
                return F.w4_prime_power(p, m, "w4-plus" if eps == 1 else "w4-minus")
            return F.w_prime_power_even(p, m, s - 2, eps)
    q = ring.residue_size
    if (-1) ** (s // 2) != eps and q % 2:
        return F.lift_from_residue_field(params, F.w_field(q, s, eps), s, eps)
    raise NotApplicable(f"no closed form for w_{s}^{eps} over {ring.name}")


def _local_roots(spec, ring, n, a):
    if n == 1:
        return 1
    params = F.LocalParams.from_ring(ring)
    if not ring.is_unit(a):
        fam = _family(spec, ring)
        if fam:
            return F.roots_closed_form(fam[0], fam[1], fam[2], n)
        return F.roots_local(params, n, sum_w=F.sum_w_local(params, n + 2))
    # unit targets: |R_n^u| = w_{n+2}^v with v = -u^-1
    v = ring.neg(ring.inv(a))
    if n % 2 == 0 and _eps(ring, v) is None:
        fam = _family(spec, ring)
        if fam and fam[0] == "field" and n >= 4:
            return F.roots_even_field_unit(fam[1], n // 2)
    return _local_quiddity(spec, ring, n + 2, v)


def _local_sum_w(spec, ring, n):
    if n == 1:
        return 0
    if n == 2:
        return 1
    return F.sum_w_local(F.LocalParams.from_ring(ring), n)


def formula_value(kind, ring, n, target):
    try:
        if kind == "sum_w":
            parts = _components(ring, ring.zero)
            return math.prod(_local_sum_w(s, r, n) for s, r, _ in parts)
        if kind == "quiddity" and not ring.is_unit(target):
            raise ValueError(f"{ring.format(target)} is not a unit of {ring.name}")
        parts = _components(ring, target)
        fn = _local_roots if kind == "roots" else _local_quiddity
        return math.prod(fn(s, r, n, x) for s, r, x in parts)
    except F.DomainError as exc:
        raise NotApplicable(str(exc)) from None
