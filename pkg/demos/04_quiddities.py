"""
Quiddities over local rings
===========================

w_n^u counts tuples with M_n = diag(u, 1/u).  Over a local ring the sum
over units depends only on |A| and |U|; for +-1 there are formulas for
fields, prime powers and truncated polynomial rings, and a way to lift
counts from the residue field.
"""

from continuants import enumeration as E
from continuants import formulas as F
from continuants.rings import build_ring

A = build_ring("Zmod:27")
p = F.LocalParams.from_ring(A)
print(f"Z/27: |A|={p.size} |U|={p.units} q={p.q} omega={p.omega}")
print("omega^2 = |U|^2 + 4|A-U||A|:", p.omega ** 2 == p.units ** 2 + 4 * p.nonunits * p.size)

w = E.quiddity_by_unit(A, 8)
print("w_8^1(Z/27) =", w[A.one], " w_8^-1(Z/27) =", w[A.neg(A.one)])
print("even prime-power formula:", F.w_prime_power_even(3, 3, 6, 1), F.w_prime_power_even(3, 3, 6, -1))

# the residue-field lift multiplies by |A-U|^(n-3)
Z9 = build_ring("Zmod:9")
lifted = F.lift_from_residue_field(F.LocalParams.from_ring(Z9), F.w_field(3, 5, 1), 5, 1)
print("w_5^1(Z/9): lift", lifted, " DP", E.count_quiddity(Z9, 5, Z9.one))

# for even n over a residue field of characteristic 2 the lift breaks:
# over Z/8 it would give 3 * 4 = 12 for w_4^-1, but the count is 8
Z8 = build_ring("Zmod:8")
print("w_4^-1(Z/8) by DP:", E.count_quiddity(Z8, 4, 7))
try:
    F.lift_from_residue_field(F.LocalParams.from_ring(Z8), F.w_field(2, 4, -1), 4, -1)
except F.DomainError as exc:
    print("lift refused:", exc)
