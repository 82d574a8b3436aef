"""Closed-form counts over exact integers.

Every formula checks its stated domain up front and raises :class:`DomainError`
naming the violated condition; every division is checked to be exact.

Indexing convention: functions whose formula is naturally stated for size
``n + 2`` (the prime-power and truncated-polynomial families) take that ``n``
and return the count for tuples of length ``n + 2``.  Everything else takes
the tuple length directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings.spec import factorize, is_prime


class DomainError(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


def exact_div(num, den):
    q, r = divmod(num, den)
    if r:
        raise InexactDivision(f"{num} / {den} leaves remainder {r}")
    return q


def _prime_power(q):
    """(p, k) with q = p^k, or None."""
    f = factorize(q) if q >= 2 else []
    return f[0] if len(f) == 1 else None


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


def _sign(eps):
    _require(eps in (1, -1), f"epsilon must be +1 or -1, got {eps}")
    return eps


# ---------------------------------------------------------- local rings


@dataclass(frozen=True)
class LocalParams:
    """Cardinalities of a finite local ring and the derived integer roots
    omega = |A| + |A-U|, eta = |A|, tau = -|A-U| of t^2 - |U| t - |A-U||A|."""

    size: int
    units: int

    @property
    def nonunits(self):
        return self.size - self.units

    @property
    def q(self):
        return exact_div(self.size, self.nonunits)

    @property
    def omega(self):
        return self.size + self.nonunits

    @property
    def eta(self):
        return self.size

    @property
    def tau(self):
        return -self.nonunits

    def check(self):
        """The radical definition omega^2 = |U|^2 + 4|A-U||A| and the root
        relations eta + tau = |U|, eta * tau = -|A-U||A|."""
        N, U, A = self.nonunits, self.units, self.size
        return (self.omega ** 2 == U * U + 4 * N * A
                and self.eta + self.tau == U
                and self.eta * self.tau == -N * A)

    @classmethod
    def from_ring(cls, ring):
        _require(ring.is_local, f"{ring.name} is not a local ring")
        return cls(ring.size, ring.n_units)


def sum_w_local(params: LocalParams, n):
    """Sum over all units v of w_n^v(A) for a finite local ring, n >= 3."""
    _require(n >= 3, f"need n >= 3, got n={n}")
    U, N, A = params.units, params.nonunits, params.size
    w, eta, tau = params.omega, params.eta, params.tau
    e = n - 3
    num = U * w * (tau ** e + eta ** e) + (2 * N * A + U * U) * (eta ** e - tau ** e)
    return exact_div(num, 2 * w)


def roots_local(params: LocalParams, n, sum_w=None, w_one=None):
    """r_n(A) = number of roots of K_n over a finite local ring.

    Pass ``sum_w`` = sum over units u of w_{n+2}^u(A) (any n >= 1), or, for odd
    n, ``w_one`` = w_{n+2}^1(A).
    """
    _require(n >= 1, f"need n >= 1, got n={n}")
    if sum_w is None:
        _require(w_one is not None, "pass sum_w or w_one")
        _require(n % 2 == 1, f"the w_one variant needs odd n, got n={n}")
        sum_w = params.units * w_one
    return exact_div(params.size ** n - sum_w, params.nonunits)


# ------------------------------------------------------ roots, closed forms

ROOT_FAMILIES = ("field", "zpm", "truncated")


def roots_closed_form(family, q, m, n):
    """r_n for F_q (family 'field', m ignored), Z/p^m ('zpm', q = p prime),
    or F_q[X]/<X^m> ('truncated')."""
    _require(n >= 1, f"need n >= 1, got n={n}")
    if family == "zpm":
        _require(is_prime(q), f"p={q} is not prime")
    else:
        _require(_prime_power(q) is not None, f"q={q} is not a prime power")
    if family == "field":
        m = 1
    elif family not in ROOT_FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    _require(m >= 1, f"need m >= 1, got m={m}")
    return exact_div(q ** ((m - 1) * (n - 1)) * (q ** n + (-1) ** (n + 1)), q + 1)


def crt_roots(N, n):
    """r_n(Z/N) as the product over prime powers p^a || N."""
    _require(N >= 2, f"need N >= 2, got N={N}")
    out = 1
    for p, a in factorize(N):
        out *= roots_closed_form("zpm", p, a, n)
    return out


def roots_even_field_unit(q, m):
    """|R_{2m}^u(F_q)| for a unit u other than 1 and -1, m >= 2.

    For q in {2, 3} no such unit exists and the value is vacuous.
    """
    _require(_prime_power(q) is not None, f"q={q} is not a prime power")
    _require(m >= 2, f"need m >= 2, got m={m}")
    return exact_div((q ** (m + 1) - 1) * (q ** m - 1), q * q - 1)


# ---------------------------------------------------- quiddities, known cases


def w_field(q, n, eps):
    """w_n^eps(F_q) for n >= 2 (eps = +1 needs an odd characteristic unless
    q is even, where 1 = -1)."""
    _sign(eps)
    pk = _prime_power(q)
    _require(pk is not None, f"q={q} is not a prime power")
    _require(n >= 2, f"need n >= 2, got n={n}")
    p = pk[0]
    if n % 2:
        return exact_div(q ** (n - 1) - 1, q * q - 1)
    m = n // 2
    base = exact_div((q ** m - 1) * (q ** (m - 1) - 1), q * q - 1)
    if p == 2:
        return base + q ** (m - 1)
    # odd p: the q^(m-1) term appears for eps = -1 with m odd, eps = +1 with m even
    bump = (m % 2 == 1) if eps == -1 else (m % 2 == 0)
    return base + (q ** (m - 1) if bump else 0)


def w_two_power_odd(m, n):
    """w_n^{+-1}(Z/2^m) for odd n >= 5 and m >= 1."""
    _require(m >= 1, f"need m >= 1, got m={m}")
    _require(n % 2 == 1 and n >= 5, f"need odd n >= 5, got n={n}")
    k = (n - 1) // 2
    e = 2 * m * k - 2 * k - 2 * m - 1
    num = 2 ** (2 * k + 3) - 8
    if e >= 0:
        return exact_div(2 ** e * num, 3)
    return exact_div(num, 3 * 2 ** (-e))


def w_z4(n, eps):
    """w_n^eps(Z/4) for even n >= 4."""
    _sign(eps)
    _require(n % 2 == 0 and n >= 4, f"need even n >= 4, got n={n}")
    big = exact_div(4 ** (n - 2) + 2 ** (n - 1), 3)
    small = exact_div(4 ** (n - 2) - 2 ** (n - 2), 3)
    m_even = (n // 2) % 2 == 0
    return big if (eps == 1) == m_even else small


def w_truncated_poly(q, m, n):
    """w_{n+2}^1(F_q[X]/<X^m>) for odd n >= 1, m >= 1."""
    _require(_prime_power(q) is not None, f"q={q} is not a prime power")
    _require(m >= 1, f"need m >= 1, got m={m}")
    _require(n >= 1 and n % 2 == 1, f"need odd n >= 1, got n={n}")
    return exact_div(q ** (n * m + 1) - q ** (n * (m - 1)), q ** (m - 1) * (q * q - 1))


def w_prime_power_odd(p, m, n):
    """w_{n+2}^1(Z/p^m) for odd n >= 1, m >= 2."""
    _require(is_prime(p), f"p={p} is not prime")
    _require(m >= 2, f"need m >= 2, got m={m}")
    _require(n >= 1 and n % 2 == 1, f"need odd n >= 1, got n={n}")
    return exact_div(p ** (n * m + 1) - p ** (n * (m - 1)), p ** (m - 1) * (p * p - 1))


PRIOR_SOURCES = ("field-minus", "field-plus", "two-power-odd", "z4", "truncated", "prime-power-odd")


def prior_w(source, n, eps=1, q=None, p=None, m=None):
    """Dispatch to the previously known quiddity counts.

    field-minus      w_n^-1(F_q), n >= 2
    field-plus       w_n^1(F_q), q odd, n >= 2
    two-power-odd    w_n^{+-1}(Z/2^m), odd n >= 5, m >= 1
    z4               w_n^eps(Z/4), even n >= 4
    truncated        w_{n+2}^1(F_q[X]/<X^m>), odd n
    prime-power-odd  w_{n+2}^1(Z/p^m), odd n, m >= 2
    """
    if source == "field-minus":
        _require(eps == -1, "field-minus counts eps = -1")
        return w_field(q, n, -1)
    if source == "field-plus":
        _require(eps == 1, "field-plus counts eps = +1")
        _require(q is not None and q % 2 == 1, f"field-plus needs odd q, got q={q}")
        return w_field(q, n, 1)
    if source == "two-power-odd":
        _sign(eps)
        return w_two_power_odd(m, n)
    if source == "z4":
        return w_z4(n, eps)
    if source == "truncated":
        _require(eps == 1, "truncated counts eps = +1")
        return w_truncated_poly(q, m, n)
    if source == "prime-power-odd":
        _require(eps == 1, "prime-power-odd counts eps = +1")
        return w_prime_power_odd(p, m, n)
    raise DomainError(f"unknown source {source!r}; expected one of {PRIOR_SOURCES}")


def w_prime_power_even(p, m, n, eps):
    """w_{n+2}^eps(Z/p^m) for even n = 2l >= 4; p odd with m >= 2, or p = 2
    with m >= 3."""
    _sign(eps)
    _require(is_prime(p), f"p={p} is not prime")
    _require(n % 2 == 0 and n >= 4, f"need even n >= 4, got n={n}")
    l = n // 2
    if p == 2:
        _require(m >= 3, f"p=2 needs m >= 3, got m={m}")
        scale = 2 ** ((m - 2) * (n - 1))
        plain = scale * exact_div(4 ** n - 2 ** n, 3)
        tail = exact_div(2 ** ((m - 2) * (n - 1 - l)) - 1, 2 ** (n - 1 - l) - 1) * 2 ** (m * l - 1)
        bumped = scale * exact_div(4 ** n + 2 ** (n + 1), 3) + tail
    else:
        _require(m >= 2, f"odd p needs m >= 2, got m={m}")
        scale = p ** ((m - 1) * (n - 1))
        core = exact_div((p ** (l + 1) - 1) * (p ** l - 1), p * p - 1)
        plain = scale * core
        tail = exact_div(p ** ((m - 1) * (n - 1 - l)) - 1, p ** (n - 1 - l) - 1) * p ** (m * l - 1) * (p - 1)
        bumped = scale * (core + p ** l) + tail
    l_even = l % 2 == 0
    return plain if (eps == 1) == l_even else bumped


W4_CASES = ("w4-minus", "w4-plus", "r2-sum")


def w4_prime_power(p, m, which):
    """Small counts over Z/p^m, m >= 2.

    w4-minus  w_4^-1 (p odd, or p = 2 with m >= 3)
    w4-plus   w_4^1 = |R_2^-1|
    r2-sum    sum over j in [0, p) of |R_2^{-1 - j p^(m-1)}|
    """
    _require(is_prime(p), f"p={p} is not prime")
    _require(m >= 2, f"need m >= 2, got m={m}")
    if which == "w4-minus":
        if p == 2:
            _require(m >= 3, f"p=2 needs m >= 3, got m={m}")
            return 2 ** m
        return p ** (m - 1) * (p - 1)
    if which == "w4-plus":
        return p ** (m - 1) * (p * (m + 1) - m)
    if which == "r2-sum":
        return p ** m * (m * (p - 1) + 1)
    raise DomainError(f"unknown case {which!r}; expected one of {W4_CASES}")


def lift_from_residue_field(params: LocalParams, residue_w, n, eps):
    """w_n^eps(A) = w_n^eps(A/m) * |A-U|^(n-3) for a finite local ring A with
    maximal ideal m.

    Needs n >= 3, and for even n both (-1)^(n/2) != eps and an odd residue
    field: when q is even, eps = (-1)^(n/2) holds in A/m whatever eps is, and
    the lift fails (w_4^-1(Z/8) = 8, not 3 * 4).  n = 2 is refused as well:
    w_2^1(Z/4) = 0 while w_2^1(F_2) / |A-U| = 1/2.
    """
    _sign(eps)
    _require(n >= 3, f"need n >= 3, got n={n}")
    if n % 2 == 0:
        _require((-1) ** (n // 2) != eps,
                 f"need n odd or (-1)^(n/2) != eps, got n={n}, eps={eps}")
        _require(params.q % 2 == 1, f"even n={n} needs an odd residue field, got q={params.q}")
    return residue_w * params.nonunits ** (n - 3)
