"""
Continuants and their matrices
==============================

K_n(a_1..a_n) satisfies K_k = a_k K_{k-1} - K_{k-2}, and the product
M_n = E(a_n) ... E(a_1) with E(a) = [[a, -1], [1, 0]] carries four
continuants in its entries.
"""

import numpy as np

from continuants import continuant as C
from continuants.rings import build_ring

A = build_ring("Zmod:1000")
t = [3, 1, 4, 1, 5]
print("K(3,1,4,1,5) mod 1000 =", C.continuant(A, t))
print("M =", tuple(C.m_matrix(A, t)))

# the top-left entry is the continuant itself, the others drop an end
print("entry identity holds:", C.check_entry_identity(A, t))
print("reversal holds:", C.check_reversal(A, t))

# (1,1,1) is the shortest quiddity: M = -Id
print("M(1,1,1) =", tuple(C.m_matrix(A, [1, 1, 1])))

# columns of tuples evaluate in one pass
Z = build_ring("Zmod:8")
cols = [np.arange(8), np.full(8, 3), np.arange(8)]
print("K(a,3,a) for a in Z/8:", C.continuant(Z, cols).tolist())
