"""
Counting roots three ways
=========================

r_n(A) is the number of tuples in A^n whose continuant vanishes.  Brute
force walks all |A|^n tuples, the transfer-matrix DP pushes a count
vector through SL_2(A), and for local rings a closed form needs only
|A| and |U|.
"""

import time

from continuants import enumeration as E
from continuants import formulas as F
from continuants.rings import build_ring

A = build_ring("Zmod:8")
for n in range(1, 7):
    brute = E.count_roots(A, n, 0, "brute")
    dp = E.count_roots(A, n, 0, "dp")
    closed = F.roots_closed_form("zpm", 2, 3, n)
    print(f"n={n}  brute={brute:7d}  dp={dp:7d}  closed form={closed:7d}")

# the DP reaches sizes brute force never will
B = build_ring("GF:2^4")
start = time.perf_counter()
print("r_8(F_16) =", E.count_roots(B, 8, 0, "dp"), f"({time.perf_counter() - start:.2f}s)")
print("r_40(Z/4) =", E.count_roots(build_ring("Zmod:4"), 40, 0))

# Z/N splits into prime-power factors
for N in (6, 10, 12):
    print(f"r_5(Z/{N}) =", F.crt_roots(N, 5), "=", E.count_roots(build_ring(f"Zmod:{N}"), 5, 0))

# every target is hit, and in a local ring all non-unit targets share a count
r = E.roots_by_target(build_ring("Zmod:9"), 4)
print("roots of K_4 over Z/9 by target:", r)
