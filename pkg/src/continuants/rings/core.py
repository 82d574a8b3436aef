"""Materialized finite commutative unitary rings.

Every element is a dense index ``0 <= x < size``.  Arithmetic goes through a
backend that works on numpy index arrays (so whole element vectors are
combined at once); rings with at most ``TABLE_LIMIT`` elements additionally
get precomputed add/mul/neg tables.
"""

from __future__ import annotations

import json
import math
import re
from collections import namedtuple
from functools import lru_cache

import numpy as np

from . import spec as S
from .poly import smallest_irreducible

TABLE_LIMIT = 256
DEFAULT_CAP = 4096


class BuildError(ValueError):
    pass


def _split_top(text, sep=","):
    """Split on ``sep`` outside of () and []."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


# ---------------------------------------------------------------- backends


class _Zmod:
    def __init__(self, N):
        self.N = N
        self.size = N
        self.zero, self.one = 0, 1 % N
        self.gens = {}

    def add(self, x, y):
        return (x + y) % self.N

    def neg(self, x):
        return (-x) % self.N

    def mul(self, x, y):
        return (x * y) % self.N

    def fmt(self, x):
        return str(int(x))

    def parse(self, text, ring):
        return None

    def units(self):
        xs = np.arange(self.N)
        mask = np.gcd(xs, self.N) == 1
        inv = np.full(self.N, -1, dtype=np.int64)
        for x in xs[mask]:
            inv[x] = pow(int(x), -1, self.N)
        return mask, inv


class _FreeAlgebra:
    """base[x(,y)] modulo one monic relation per variable: a free base-module
    with monomial basis x^i y^j, i < dx, j < dy."""

    def __init__(self, base, fx, fy=None, field=False):
        self.base = base
        self.b = base.size
        self.dx = len(fx)
        self.dy = len(fy) if fy is not None else 1
        self.fx, self.fy = list(fx), (list(fy) if fy is not None else None)
        self.D = self.dx * self.dy
        self.size = self.b ** self.D
        self.field = field
        self._pow = [self.b ** k for k in range(self.D)]
        self.zero = self.encode([base.zero] * self.D)
        one = [base.zero] * self.D
        one[0] = base.one
        self.one = self.encode(one)
        self.gens = {}
        if self.dx > 1:
            d = [base.zero] * self.D
            d[1] = base.one
            self.gens["x"] = self.encode(d)
        elif self.dx == 1:
            # x reduces to -fx[0]
            self.gens["x"] = self.encode([base.neg(fx[0])] + [base.zero] * (self.D - 1))
        if fy is not None:
            d = [base.zero] * self.D
            if self.dy > 1:
                d[self.dx] = base.one
            else:
                d[0] = base.neg(fy[0])
            self.gens["y"] = self.encode(d)

    def decode(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return [(idx // p) % self.b for p in self._pow]

    def encode(self, digits):
        return sum(np.asarray(d, dtype=np.int64) * p for d, p in zip(digits, self._pow))

    def add(self, x, y):
        B = self.base
        return self.encode([B.add(a, c) for a, c in zip(self.decode(x), self.decode(y))])

    def neg(self, x):
        return self.encode([self.base.neg(a) for a in self.decode(x)])

    def mul(self, x, y):
        B = self.base
        dx, dy = self.dx, self.dy
        X, Y = self.decode(x), self.decode(y)
        shape = np.broadcast(X[0], Y[0]).shape
        zero = np.full(shape, B.zero, dtype=np.int64)
        acc = [[zero for _ in range(2 * dy - 1)] for _ in range(2 * dx - 1)]
        for k1, c1 in enumerate(X):
            i1, j1 = k1 % dx, k1 // dx
            for k2, c2 in enumerate(Y):
                i2, j2 = k2 % dx, k2 // dx
                acc[i1 + i2][j1 + j2] = B.add(acc[i1 + i2][j1 + j2], B.mul(c1, c2))
        # x^e = x^(e-dx) * (-sum fx[i] x^i), highest degree first
        for e in range(2 * dx - 2, dx - 1, -1):
            for j in range(2 * dy - 1):
                t = acc[e][j]
                for i, f in enumerate(self.fx):
                    acc[e - dx + i][j] = B.sub(acc[e - dx + i][j], B.mul(f, t))
        if self.fy is not None:
            for e in range(2 * dy - 2, dy - 1, -1):
                for i in range(dx):
                    t = acc[i][e]
                    for j, f in enumerate(self.fy):
                        acc[i][e - dy + j] = B.sub(acc[i][e - dy + j], B.mul(f, t))
        return self.encode([acc[k % dx][k // dx] for k in range(self.D)])

    def fmt(self, x):
        digits = [int(d) for d in self.decode(x)]
        if isinstance(self.base._b, _Zmod):
            terms = tuple(((k % self.dx, k // self.dx), c) for k, c in enumerate(digits) if c)
            return S.format_poly(terms)
        return "[" + ",".join(self.base.format(d) for d in digits) + "]"

    def parse(self, text, ring):
        if text.startswith("[") and text.endswith("]"):
            parts = _split_top(text[1:-1])
            if len(parts) != self.D:
                raise ValueError(f"expected {self.D} coefficients in {text!r}")
            return int(self.encode([self.base.element(p) for p in parts]))
        return None

    def units(self):
        if not self.field:
            return None
        xs = np.arange(self.size, dtype=np.int64)
        mask = xs != self.zero
        # x^(q-2) by square-and-multiply over the whole element vector
        e, r, b = self.size - 2, np.full(self.size, self.one, dtype=np.int64), xs
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return mask, np.where(mask, r, -1)


class _Quotient:
    """parent / I for an ideal I given by generators; elements are the
    minimal-index coset representatives."""

    def __init__(self, parent, generators):
        self.parent = parent
        P = parent
        allx = np.arange(P.size, dtype=np.int64)
        span = np.unique(np.concatenate([np.atleast_1d(P.mul(allx, g)) for g in generators]))
        ideal = np.array([P.zero], dtype=np.int64)
        for h in span:
            if np.isin(h, ideal):
                continue
            acc, t = [ideal], int(h)
            while not np.isin(t, ideal):
                acc.append(np.atleast_1d(P.add(ideal, t)))
                t = int(P.add(t, h))
            ideal = np.unique(np.concatenate(acc))
        if np.isin(P.one, ideal):
            raise BuildError("relations generate the whole ring (quotient is zero)")
        self.ideal = ideal
        rep = np.empty(P.size, dtype=np.int64)
        step = max(1, (1 << 22) // len(ideal))
        for lo in range(0, P.size, step):
            chunk = allx[lo:lo + step]
            rep[lo:lo + step] = np.atleast_2d(P.add(chunk[:, None], ideal[None, :])).min(axis=1)
        self.lift = np.unique(rep)
        self.proj = np.searchsorted(self.lift, rep)
        self.size = len(self.lift)
        self.zero = int(self.proj[P.zero])
        self.one = int(self.proj[P.one])
        self.gens = {k: int(self.proj[v]) for k, v in P._b.gens.items()}

    def add(self, x, y):
        return self.proj[self.parent.add(self.lift[x], self.lift[y])]

    def neg(self, x):
        return self.proj[self.parent.neg(self.lift[x])]

    def mul(self, x, y):
        return self.proj[self.parent.mul(self.lift[x], self.lift[y])]

    def fmt(self, x):
        return self.parent.format(int(self.lift[x]))

    def parse(self, text, ring):
        inner = self.parent._b.parse(text, self.parent)
        return None if inner is None else int(self.proj[inner])

    def units(self):
        return None


class _Product:
    def __init__(self, factors):
        self.factors = factors
        self._radix = []
        r = 1
        for f in factors:
            self._radix.append(r)
            r *= f.size
        self.size = r
        self.zero = int(self.encode([f.zero for f in factors]))
        self.one = int(self.encode([f.one for f in factors]))
        self.gens = {}

    def decode(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return [(idx // r) % f.size for r, f in zip(self._radix, self.factors)]

    def encode(self, parts):
        return sum(np.asarray(p, dtype=np.int64) * r for p, r in zip(parts, self._radix))

    def add(self, x, y):
        return self.encode([f.add(a, b) for f, a, b in zip(self.factors, self.decode(x), self.decode(y))])

    def neg(self, x):
        return self.encode([f.neg(a) for f, a in zip(self.factors, self.decode(x))])

    def mul(self, x, y):
        return self.encode([f.mul(a, b) for f, a, b in zip(self.factors, self.decode(x), self.decode(y))])

    def fmt(self, x):
        return "(" + ",".join(f.format(int(a)) for f, a in zip(self.factors, self.decode(x))) + ")"

    def parse(self, text, ring):
        if not (text.startswith("(") and text.endswith(")")):
            return None
        parts = _split_top(text[1:-1])
        if len(parts) != len(self.factors):
            raise ValueError(f"expected a {len(self.factors)}-tuple, got {text!r}")
        return int(self.encode([f.element(p) for f, p in zip(self.factors, parts)]))

    def units(self):
        masks = [f.unit_mask for f in self.factors]
        invs = [f.inverse for f in self.factors]
        digits = self.decode(np.arange(self.size))
        mask = np.logical_and.reduce([m[d] for m, d in zip(masks, digits)])
        inv = np.where(mask, self.encode([np.maximum(iv[d], 0) for iv, d in zip(invs, digits)]), -1)
        return mask, inv


class _Table:
    def __init__(self, add, mul, zero, one):
        self.size = len(add)
        self._add, self._mul = add, mul
        self.zero, self.one = zero, one
        neg = np.argmax(add == zero, axis=1)
        self._neg = neg
        self.gens = {}

    def add(self, x, y):
        return self._add[x, y]

    def neg(self, x):
        return self._neg[x]

    def mul(self, x, y):
        return self._mul[x, y]

    def fmt(self, x):
        return f"e{int(x)}"

    def parse(self, text, ring):
        m = re.fullmatch(r"e(\d+)", text)
        return int(m.group(1)) if m else None

    def units(self):
        return None


# -------------------------------------------------------------------- Ring

RingParams = namedtuple("RingParams", "size n_units is_local q")


class Ring:
    """A finite commutative unitary ring on the index set ``range(size)``.

    Operations accept ints or numpy integer arrays (broadcasting) and return
    the same kind.
    """

    def __init__(self, spec, backend):
        self.spec = spec
        self.name = str(spec)
        self._b = backend
        self.size = backend.size
        self.zero = int(backend.zero)
        self.one = int(backend.one)
        self._tables = None
        if self.size <= TABLE_LIMIT:
            xs = np.arange(self.size, dtype=np.int64)
            a, b = np.meshgrid(xs, xs, indexing="ij")
            self._tables = (
                np.asarray(backend.add(a, b), dtype=np.int64),
                np.asarray(backend.mul(a, b), dtype=np.int64),
                np.asarray(backend.neg(xs), dtype=np.int64),
            )
        self.unit_mask, self.inverse = self._compute_units()
        xs = np.arange(self.size, dtype=np.int64)
        one_minus = self.sub(self.one, xs)
        self.is_local = bool(np.all(self.unit_mask | self.unit_mask[one_minus]))
        self.n_units = int(self.unit_mask.sum())
        self.residue_size = None
        if self.is_local:
            nonunits = self.size - self.n_units
            if self.size % nonunits:
                raise BuildError(f"{self.name}: |A|/|A-U(A)| is not an integer")
            self.residue_size = self.size // nonunits

    # arithmetic ---------------------------------------------------------
    def _wrap(self, r):
        r = np.asarray(r)
        return int(r) if r.ndim == 0 else r

    def add(self, x, y):
        if self._tables is not None:
            return self._wrap(self._tables[0][x, y])
        return self._wrap(self._b.add(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)))

    def mul(self, x, y):
        if self._tables is not None:
            return self._wrap(self._tables[1][x, y])
        return self._wrap(self._b.mul(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)))

    def neg(self, x):
        if self._tables is not None:
            return self._wrap(self._tables[2][x])
        return self._wrap(self._b.neg(np.asarray(x, dtype=np.int64)))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def from_int(self, k):
        """The image k*1_A of an integer."""
        r, acc, n = self.zero, self.one, abs(k)
        while n:
            if n & 1:
                r = self.add(r, acc)
            acc = self.add(acc, acc)
            n >>= 1
        return self.neg(r) if k < 0 else r

    def inv(self, x):
        y = int(self.inverse[x])
        if y < 0:
            raise ValueError(f"{self.format(x)} is not a unit of {self.name}")
        return y

    def is_unit(self, x):
        return bool(self.unit_mask[x])

    # units --------------------------------------------------------------
    def _compute_units(self):
        if self._tables is not None:
            hit = self._tables[1] == self.one
            mask = hit.any(axis=1)
            return mask, np.where(mask, hit.argmax(axis=1), -1)
        got = self._b.units()
        if got is not None:
            return np.asarray(got[0], dtype=bool), np.asarray(got[1], dtype=np.int64)
        xs = np.arange(self.size, dtype=np.int64)
        mask = np.zeros(self.size, dtype=bool)
        inv = np.full(self.size, -1, dtype=np.int64)
        step = max(1, (1 << 20) // self.size)
        for lo in range(0, self.size, step):
            rows = self._b.mul(xs[lo:lo + step, None], xs[None, :]) == self.one
            m = rows.any(axis=1)
            mask[lo:lo + step] = m
            inv[lo:lo + step] = np.where(m, rows.argmax(axis=1), -1)
        return mask, inv

    # elements -----------------------------------------------------------
    @property
    def elements(self):
        return range(self.size)

    def format(self, x):
        return self._b.fmt(int(x))

    def element(self, text):
        """Parse an element literal: an integer (read as k*1_A), the ring's
        display form, or a polynomial in the ring's generators."""
        text = str(text).strip().replace(" ", "")
        if re.fullmatch(r"[+-]?\d+", text):
            return self.from_int(int(text))
        got = self._b.parse(text, self)
        if got is not None:
            if not 0 <= got < self.size:
                raise ValueError(f"element {text!r} out of range")
            return got
        if not self._b.gens:
            raise ValueError(f"cannot read {text!r} as an element of {self.name}")
        poly = S.parse_poly(text, "".join(self._b.gens))
        return self.eval_poly(poly)

    def eval_poly(self, poly):
        r = self.zero
        for (dx, dy), c in poly:
            t = self.from_int(c)
            for var, d in (("x", dx), ("y", dy)):
                for _ in range(d):
                    t = self.mul(t, self._b.gens[var])
            r = self.add(r, t)
        return r

    def __repr__(self):
        return f"Ring({self.name!r}, size={self.size})"

    def __len__(self):
        return self.size


# ---------------------------------------------------------------- building


def _poly_in(ring, poly):
    """Integer polynomial -> {(i, j): ring element}, zero terms dropped."""
    out = {}
    for mono, c in poly:
        v = ring.add(out.get(mono, ring.zero), ring.from_int(c))
        out[mono] = v
    return {k: v for k, v in out.items() if v != ring.zero}


def _monic_univariate(ring, poly, var):
    """Coefficients below the leading term if poly is monic in var alone."""
    coeffs = _poly_in(ring, poly)
    if not coeffs:
        return None
    idx = 0 if var == "x" else 1
    if any(m[1 - idx] for m in coeffs):
        return None
    deg = max(m[idx] for m in coeffs)
    if deg < 1 or coeffs[(deg, 0) if var == "x" else (0, deg)] != ring.one:
        return None
    key = (lambda i: (i, 0)) if var == "x" else (lambda i: (0, i))
    return [coeffs.get(key(i), ring.zero) for i in range(deg)]


def _check_cap(size, cap, what):
    if size > cap:
        raise BuildError(f"{what} has {size} elements, above the cap of {cap}")


def _quotient_by(spec, free, relations, cap):
    rest = [free.eval_poly(r) for r in relations]
    rest = [g for g in rest if g != free.zero]
    if not rest:
        return free
    return Ring(spec, _Quotient(free, rest))


def _build(spec, cap):
    if isinstance(spec, S.Zmod):
        _check_cap(spec.N, cap, str(spec))
        return Ring(spec, _Zmod(spec.N))

    if isinstance(spec, S.GF):
        _check_cap(spec.p ** spec.k, cap, str(spec))
        base = build_ring(S.Zmod(spec.p), cap)
        if spec.k == 1 and spec.modulus is None:
            return Ring(spec, _Zmod(spec.p))
        modulus = list(spec.modulus) if spec.modulus else smallest_irreducible(spec.k, spec.p)
        return Ring(spec, _FreeAlgebra(base, modulus[:-1], field=True))

    if isinstance(spec, S.PolyQuot):
        base = build_ring(spec.base, cap)
        monic = [(r, _monic_univariate(base, r, "x")) for r in spec.relations]
        monic = [(r, f) for r, f in monic if f is not None]
        if not monic:
            raise BuildError(f"{spec}: quotient is not finite (no monic relation)")
        rel, fx = min(monic, key=lambda t: len(t[1]))
        _check_cap(base.size ** len(fx), cap, f"{spec} (free part)")
        free = Ring(spec, _FreeAlgebra(base, fx))
        return _quotient_by(spec, free, [r for r in spec.relations if r is not rel], cap)

    if isinstance(spec, S.BivarQuot):
        base = build_ring(spec.base, cap)
        fx = [(r, _monic_univariate(base, r, "x")) for r in spec.generators]
        fy = [(r, _monic_univariate(base, r, "y")) for r in spec.generators]
        fx = [t for t in fx if t[1] is not None]
        fy = [t for t in fy if t[1] is not None]
        if not fx or not fy:
            raise BuildError(f"{spec}: quotient is not finite (needs a monic relation in x alone and in y alone)")
        rx, cx = min(fx, key=lambda t: len(t[1]))
        ry, cy = min(fy, key=lambda t: len(t[1]))
        _check_cap(base.size ** (len(cx) * len(cy)), cap, f"{spec} (free part)")
        free = Ring(spec, _FreeAlgebra(base, cx, cy))
        return _quotient_by(spec, free, [r for r in spec.generators if r is not rx and r is not ry], cap)

    if isinstance(spec, S.Product):
        factors = [build_ring(f, cap) for f in spec.factors]
        _check_cap(math.prod(f.size for f in factors), cap, str(spec))
        return Ring(spec, _Product(factors))

    if isinstance(spec, S.TableRing):
        return load_table_ring(spec, cap)

    raise TypeError(f"not a ring spec: {spec!r}")


@lru_cache(maxsize=64)
def _build_cached(spec, cap):
    return _build(spec, cap)


def build_ring(spec, cap=DEFAULT_CAP):
    """Materialize a ring from a :class:`RingSpec` or a spec string."""
    if isinstance(spec, str):
        spec = S.parse_spec(spec)
    return _build_cached(spec, cap)


def load_table_ring(spec, cap=DEFAULT_CAP):
    with open(spec.path) as fh:
        data = json.load(fh)
    try:
        n, zero, one = int(data["size"]), int(data["zero"]), int(data["one"])
        add = np.array(data["add"], dtype=np.int64)
        mul = np.array(data["mul"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise BuildError(f"{spec.path}: malformed table ring ({exc})") from None
    _check_cap(n, min(cap, TABLE_LIMIT), spec.path)
    if add.shape != (n, n) or mul.shape != (n, n):
        raise BuildError(f"{spec.path}: tables must be {n}x{n}")
    if not (0 <= zero < n and 0 <= one < n):
        raise BuildError(f"{spec.path}: zero/one out of range")
    if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        raise BuildError(f"{spec.path}: table entry out of range")
    if n > 1 and zero == one:
        raise BuildError(f"{spec.path}: zero equals one")
    ring = Ring(spec, _Table(add, mul, zero, one))
    bad = check_axioms(ring, exhaustive_limit=n)
    if bad:
        raise BuildError(f"{spec.path}: ring axioms fail: {', '.join(bad)}")
    return ring


def check_axioms(ring, exhaustive_limit=64, samples=20000, seed=0):
    """Return the names of failed commutative-ring axioms (empty if none).

    Exhaustive over all triples when ``size <= exhaustive_limit``, otherwise
    on ``samples`` random triples.
    """
    n = ring.size
    if n <= exhaustive_limit:
        xs = np.arange(n, dtype=np.int64)
        b, c = (g.ravel() for g in np.meshgrid(xs, xs, indexing="ij"))
        batches = ((np.full_like(b, x), b, c) for x in xs)
    else:
        rng = np.random.default_rng(seed)
        batches = [tuple(rng.integers(0, n, size=(3, samples)))]
    add, mul, neg = ring.add, ring.mul, ring.neg
    checks = {
        "add-assoc": lambda a, b, c: add(add(a, b), c) == add(a, add(b, c)),
        "add-comm": lambda a, b, c: add(a, b) == add(b, a),
        "add-zero": lambda a, b, c: add(a, ring.zero) == a,
        "add-inverse": lambda a, b, c: add(a, neg(a)) == ring.zero,
        "mul-assoc": lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c)),
        "mul-comm": lambda a, b, c: mul(a, b) == mul(b, a),
        "mul-one": lambda a, b, c: mul(a, ring.one) == a,
        "distrib": lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
    }
    failed = []
    for a, b, c in batches:
        for name, f in checks.items():
            if name not in failed and not np.all(f(a, b, c)):
                failed.append(name)
    return failed


def units(ring):
    return [int(x) for x in np.flatnonzero(ring.unit_mask)]


def nonunits(ring):
    return [int(x) for x in np.flatnonzero(~ring.unit_mask)]


def ring_isomorphic_params(ring) -> RingParams:
    """(|A|, |U(A)|, is_local, q); q is None for non-local rings."""
    return RingParams(ring.size, ring.n_units, ring.is_local, ring.residue_size)
