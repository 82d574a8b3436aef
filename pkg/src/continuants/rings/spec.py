"""Ring-spec strings: parsing into :class:`RingSpec` trees.

Grammar::

    Zmod:<N>
    GF:<p>^<k>[/<poly>]
    PolyQuot:<spec>/<poly>[,<poly>...]
    Bivar:<spec>/<poly>,<poly>
    Prod:<spec>;<spec>[;...]
    Table:<path>

Polynomials are written in ``x`` (and ``y`` for ``Bivar``) with ``^`` powers
and integer coefficients, e.g. ``x^2+x+1`` or ``x^2*y - 2x``.  The text after
the *last* ``/`` of a ``PolyQuot``/``Bivar`` spec is the relation list, so a
``GF`` base with an explicit modulus nests fine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Tuple, Union


class SpecError(ValueError):
    """Malformed ring spec; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, msg, pos=None):
        self.pos = pos
        if pos is not None:
            msg = f"{msg} (at position {pos})"
        super().__init__(msg)


# A polynomial is a tuple of ((deg_x, deg_y), coeff) pairs, sorted, nonzero.
Poly = Tuple[Tuple[Tuple[int, int], int], ...]


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def factorize(n):
    """Trial division; returns [(p, e), ...] with p increasing."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


_TERM = re.compile(r"(\d*)\*?((?:[xy](?:\^\d+)?\*?)*)")
_FACTOR = re.compile(r"([xy])(?:\^(\d+))?")


def parse_poly(text, variables="x", offset=0) -> Poly:
    """Parse an integer-coefficient polynomial literal.

    >>> parse_poly("x^2+3x-1")
    (((0, 0), -1), ((1, 0), 3), ((2, 0), 1))
    """
    s = text.replace(" ", "")
    if not s:
        raise SpecError("empty polynomial", offset)
    coeffs = {}
    pos = 0
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        m = _TERM.match(s, pos)
        body = m.group(0) if m else ""
        if not body or m.end() < len(s) and s[m.end()] not in "+-":
            raise SpecError(f"bad polynomial term in {text!r}", offset + pos)
        digits, mono = m.group(1), m.group(2)
        if mono.endswith("*") or (not digits and not mono):
            raise SpecError(f"bad polynomial term in {text!r}", offset + pos)
        c = int(digits) if digits else 1
        dx = dy = 0
        for var, exp in _FACTOR.findall(mono):
            if var not in variables:
                raise SpecError(f"unexpected variable {var!r}", offset + pos)
            e = int(exp) if exp else 1
            if var == "x":
                dx += e
            else:
                dy += e
        coeffs[(dx, dy)] = coeffs.get((dx, dy), 0) + sign * c
        pos = m.end()
    return tuple(sorted((k, v) for k, v in coeffs.items() if v != 0))


def format_poly(poly: Poly) -> str:
    if not poly:
        return "0"
    parts = []
    for (dx, dy), c in sorted(poly, key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
        mono = []
        for var, d in (("x", dx), ("y", dy)):
            if d == 1:
                mono.append(var)
            elif d > 1:
                mono.append(f"{var}^{d}")
        body = "*".join(mono)
        a = abs(c)
        if not body:
            term = str(a)
        elif a == 1:
            term = body
        else:
            term = f"{a}*{body}"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append((" - " if c < 0 else " + ") + term)
    return "".join(parts).replace(" ", "")


@dataclass(frozen=True)
class Zmod:
    N: int

    def __str__(self):
        return f"Zmod:{self.N}"


@dataclass(frozen=True)
class GF:
    p: int
    k: int
    modulus: Optional[Tuple[int, ...]] = None  # coefficients low degree first, monic

    def __str__(self):
        s = f"GF:{self.p}^{self.k}"
        if self.modulus is not None:
            s += "/" + format_poly(tuple(((i, 0), c) for i, c in enumerate(self.modulus) if c))
        return s


@dataclass(frozen=True)
class PolyQuot:
    base: "RingSpec"
    relations: Tuple[Poly, ...]

    def __str__(self):
        return f"PolyQuot:{self.base}/" + ",".join(format_poly(r) for r in self.relations)


@dataclass(frozen=True)
class BivarQuot:
    base: "RingSpec"
    generators: Tuple[Poly, ...]

    def __str__(self):
        return f"Bivar:{self.base}/" + ",".join(format_poly(r) for r in self.generators)


@dataclass(frozen=True)
class Product:
    factors: Tuple["RingSpec", ...]

    def __str__(self):
        return "Prod:" + ";".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class TableRing:
    path: str

    def __str__(self):
        return f"Table:{self.path}"


RingSpec = Union[Zmod, GF, PolyQuot, BivarQuot, Product, TableRing]


def _int(text, offset, what):
    if not re.fullmatch(r"\d+", text):
        raise SpecError(f"expected integer {what}, got {text!r}", offset)
    return int(text)


def parse_spec(text: str, _offset: int = 0) -> RingSpec:
    """Parse a ring-spec string (see module docstring for the grammar)."""
    text = text.strip()
    head, sep, rest = text.partition(":")
    if not sep:
        raise SpecError(f"missing ':' in ring spec {text!r}", _offset)
    at = _offset + len(head) + 1

    if head == "Zmod":
        N = _int(rest, at, "modulus")
        if N < 2:
            raise SpecError("Zmod needs N >= 2", at)
        return Zmod(N)

    if head == "GF":
        field, slash, poly = rest.partition("/")
        m = re.fullmatch(r"(\d+)(?:\^(\d+))?", field)
        if not m:
            raise SpecError(f"expected <p>^<k>, got {field!r}", at)
        p, k = int(m.group(1)), int(m.group(2) or 1)
        if not is_prime(p):
            raise SpecError(f"GF characteristic {p} is not prime", at)
        if k < 1:
            raise SpecError("GF degree must be >= 1", at)
        modulus = None
        if slash:
            from .poly import is_irreducible

            pos = at + len(field) + 1
            terms = parse_poly(poly, "x", pos)
            deg = max((d for (d, _), _ in terms), default=-1)
            coeffs = [0] * (deg + 1)
            for (d, _), c in terms:
                coeffs[d] = c % p
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if len(coeffs) - 1 != k or coeffs[-1] != 1:
                raise SpecError(f"GF modulus must be monic of degree {k} mod {p}", pos)
            if not is_irreducible(coeffs, p):
                raise SpecError(f"GF modulus {poly!r} is reducible over F_{p}", pos)
            modulus = tuple(coeffs)
        return GF(p, k, modulus)

    if head in ("PolyQuot", "Bivar"):
        inner, slash, rels = rest.rpartition("/")
        if not slash or not inner:
            raise SpecError(f"{head} needs <spec>/<poly>[,...]", at)
        base = parse_spec(inner, at)
        variables = "x" if head == "PolyQuot" else "xy"
        polys = []
        pos = at + len(inner) + 1
        for chunk in rels.split(","):
            polys.append(parse_poly(chunk, variables, pos))
            pos += len(chunk) + 1
        if head == "PolyQuot":
            return PolyQuot(base, tuple(polys))
        if len(polys) < 2:
            raise SpecError("Bivar needs at least two generators", at)
        return BivarQuot(base, tuple(polys))

    if head == "Prod":
        factors = []
        pos = at
        for chunk in rest.split(";"):
            factors.append(parse_spec(chunk, pos))
            pos += len(chunk) + 1
        if len(factors) < 2:
            raise SpecError("Prod needs at least two factors", at)
        return Product(tuple(factors))

    if head == "Table":
        if not rest:
            raise SpecError("Table needs a path", at)
        return TableRing(rest)

    raise SpecError(f"unknown ring variant {head!r}", _offset)
