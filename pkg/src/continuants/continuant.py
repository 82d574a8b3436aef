"""Continuants K_n and the matrices M_n over a :class:`~continuants.rings.Ring`.

Tuple entries may be ints or equally-shaped numpy index arrays; in the latter
case everything is evaluated column-wise, one tuple per array position.
"""

from typing import NamedTuple, Sequence


class Mat2(NamedTuple):
    a11: object
    a12: object
    a21: object
    a22: object


def continuant(ring, t: Sequence):
    """K_n(t_1, ..., t_n) by the right-append recurrence
    K_k = t_k K_{k-1} - K_{k-2}, with K_{-1} = 0 and K_0 = 1."""
    prev, cur = ring.zero, ring.one
    for a in t:
        prev, cur = cur, ring.sub(ring.mul(a, cur), prev)
    return cur


def generator(ring, a):
    """E(a) = [[a, -1], [1, 0]]."""
    return Mat2(a, ring.neg(ring.one), ring.one, ring.zero)


def mat_mul(ring, A, B):
    add, mul = ring.add, ring.mul
    return Mat2(
        add(mul(A.a11, B.a11), mul(A.a12, B.a21)),
        add(mul(A.a11, B.a12), mul(A.a12, B.a22)),
        add(mul(A.a21, B.a11), mul(A.a22, B.a21)),
        add(mul(A.a21, B.a12), mul(A.a22, B.a22)),
    )


def mat_neg(ring, A):
    return Mat2(*(ring.neg(x) for x in A))


def det(ring, A):
    return ring.sub(ring.mul(A.a11, A.a22), ring.mul(A.a12, A.a21))


def identity(ring):
    return Mat2(ring.one, ring.zero, ring.zero, ring.one)


def diag(ring, u):
    """diag(u, u^-1) for a unit u."""
    return Mat2(u, ring.zero, ring.zero, ring.inv(u))


def m_matrix(ring, t: Sequence) -> Mat2:
    """M_n(t) = E(t_n) ... E(t_1); each new factor multiplies on the left."""
    if len(t) == 0:
        raise ValueError("m_matrix needs a nonempty tuple")
    M = generator(ring, t[0])
    for a in t[1:]:
        M = mat_mul(ring, generator(ring, a), M)
    return M


def _eq(x, y):
    import numpy as np

    return bool(np.all(np.asarray(x) == np.asarray(y)))


def mat_equal(A, B):
    return all(_eq(x, y) for x, y in zip(A, B))


def check_entry_identity(ring, t) -> bool:
    """M_n(t) == [[K_n(t), -K_{n-1}(t_2..t_n)], [K_{n-1}(t_1..t_{n-1}), -K_{n-2}(t_2..t_{n-1})]].

    For n = 1 the inner tuple t_2..t_0 is empty and K_{-1} = 0 is used.
    """
    t = list(t)
    n = len(t)
    inner = ring.zero if n == 1 else continuant(ring, t[1:-1])
    expected = Mat2(
        continuant(ring, t),
        ring.neg(continuant(ring, t[1:])),
        continuant(ring, t[:-1]),
        ring.neg(inner),
    )
    return mat_equal(m_matrix(ring, t), expected)


# Reduction and scaling identities.  Each returns True when the identity holds
# at the given point, or None when the point falls outside its hypotheses.


def check_left_recurrence(ring, t):
    """K_n(t) = t_1 K_{n-1}(t_2..) - K_{n-2}(t_3..), for n >= 2."""
    if len(t) < 2:
        return None
    rhs = ring.sub(ring.mul(t[0], continuant(ring, t[1:])), continuant(ring, t[2:]))
    return _eq(continuant(ring, t), rhs)


def check_reversal(ring, t):
    return _eq(continuant(ring, t), continuant(ring, list(t)[::-1]))


def check_one_removal(ring, a, b):
    """M_3(a, 1, b) = M_2(a - 1, b - 1)."""
    one = ring.one
    return mat_equal(m_matrix(ring, [a, one, b]),
                     m_matrix(ring, [ring.sub(a, one), ring.sub(b, one)]))


def check_zero_removal(ring, a, b):
    """M_3(a, 0, b) = -M_1(a + b)."""
    return mat_equal(m_matrix(ring, [a, ring.zero, b]),
                     mat_neg(ring, m_matrix(ring, [ring.add(a, b)])))


def check_four_to_three(ring, a, u, v, b):
    """M_4(a,u,v,b) = M_3(a + (1-v)w^-1, w, b + (1-u)w^-1) with w = uv - 1 a unit."""
    w = ring.sub(ring.mul(u, v), ring.one)
    if not ring.is_unit(w):
        return None
    wi = ring.inv(w)
    rhs = [ring.add(a, ring.mul(ring.sub(ring.one, v), wi)), w,
           ring.add(b, ring.mul(ring.sub(ring.one, u), wi))]
    return mat_equal(m_matrix(ring, [a, u, v, b]), m_matrix(ring, rhs))


def check_five_to_three(ring, a, u, v, b, c):
    """M_5(a,u,v,b,c) = M_3(a - (vb-2)x^-1, x, c - (uv-2)x^-1),
    x = ((vb-1)(uv-1) - 1) v^-1, with v and x units; 2 means 1 + 1."""
    if not ring.is_unit(v):
        return None
    one = ring.one
    two = ring.add(one, one)
    vb, uv = ring.mul(v, b), ring.mul(u, v)
    x = ring.mul(ring.sub(ring.mul(ring.sub(vb, one), ring.sub(uv, one)), one), ring.inv(v))
    if not ring.is_unit(x):
        return None
    xi = ring.inv(x)
    rhs = [ring.sub(a, ring.mul(ring.sub(vb, two), xi)), x,
           ring.sub(c, ring.mul(ring.sub(uv, two), xi))]
    return mat_equal(m_matrix(ring, [a, u, v, b, c]), m_matrix(ring, rhs))


def alternate_scale(ring, t, lam):
    """(lam t_1, lam^-1 t_2, lam t_3, ...)."""
    li = ring.inv(lam)
    return [ring.mul(lam if i % 2 == 0 else li, a) for i, a in enumerate(t)]


def check_alternate_scaling(ring, t, lam):
    """If M_n(t) = diag(u, u^-1), the alternately scaled tuple gives
    diag(u, u^-1) for even n and diag(lam u, (lam u)^-1) for odd n."""
    M = m_matrix(ring, t)
    if M.a12 != ring.zero or M.a21 != ring.zero:
        return None
    u = M.a11
    target = diag(ring, u) if len(t) % 2 == 0 else diag(ring, ring.mul(lam, u))
    return mat_equal(m_matrix(ring, alternate_scale(ring, t, lam)), target)
