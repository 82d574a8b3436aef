"""Univariate polynomials over F_p as coefficient lists (low degree first)."""

from itertools import product


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p):
    """Remainder of a by b over F_p (b nonzero)."""
    a = _trim(x % p for x in a)
    b = _trim(x % p for x in b)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def monic_polys(degree, p):
    """All monic polynomials of the given degree, in lexicographic order of
    (c_0, c_1, ..., c_{degree-1})."""
    for low in product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(f, p):
    f = _trim(x % p for x in f)
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in monic_polys(d, p):
            if not poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(k, p):
    """Lexicographically smallest monic irreducible of degree k over F_p,
    coefficients compared low degree first."""
    for f in monic_polys(k, p):
        if is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")
