"""
Finite rings from spec strings
==============================

Every ring is named by a short string.  Elements are indices 0..|A|-1 and
arithmetic runs on numpy arrays, so whole columns of elements can be pushed
through add and mul at once.
"""

import numpy as np

from continuants.rings import build_ring, nonunits

# a few rings of each kind: integers mod N, finite fields, truncated
# polynomials, a two-variable quotient and a product
for spec in ["Zmod:12", "Zmod:27", "GF:2^4", "PolyQuot:GF:2^2/x^2",
             "Bivar:Zmod:2/x^2,y^2", "Prod:Zmod:2;GF:2^2"]:
    A = build_ring(spec)
    print(f"{spec:24s} |A|={A.size:3d} |U|={A.n_units:3d} local={A.is_local} q={A.residue_size}")

# in a local ring the non-units form an ideal, so 1 - a is a unit
# whenever a is not
A = build_ring("Zmod:27")
non = np.array(nonunits(A))
print("1 - a is a unit for every non-unit a:", bool(A.unit_mask[A.sub(A.one, non)].all()))

# Z/12 is not local: 3 and 4 are non-units whose sum 7 is a unit
B = build_ring("Zmod:12")
print("3 + 4 in Z/12 is a unit:", B.is_unit(B.add(3, 4)))

# elements print and parse as polynomials in x (and y)
F = build_ring("PolyQuot:Zmod:4/x^2+x+1")
x = F.element("x")
print("x^2 =", F.format(F.mul(x, x)), " x^3 =", F.format(F.mul(x, F.mul(x, x))))
