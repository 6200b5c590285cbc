"""The exact machinery the constructions stand on.

Everything upstream of a verification verdict is integer or rational:
finite-field tables, Hadamard matrices, orthogonal arrays, and a small
fraction-free linear algebra kit (rank, g-inverse, projectors, and a
consistent-system solver whose answer-products do not depend on the
pivoting order).
"""

import numpy as np

from orthoplan import ratmat
from orthoplan.arrays import hadamard, hadamard_to_oa, oa_rao_hamming, q_extend
from orthoplan.gf import field_new, square_classes, supported_orders

# Finite fields up to order 128, prime and prime-power alike.
print("supported field orders:", supported_orders()[:10], "...",
      len(supported_orders()), "total")
f9 = field_new(9)
print("GF(9): 3 * 3 =", f9.mul(3, 3), " (char %d, degree %d)" % (f9.char, f9.degree))

# Square classes drive the mixed-level construction.
sq = square_classes(field_new(7))
print("GF(7) squares:", sq.c0, " non-squares:", sq.c1)

# Hadamard matrices come out exact; the classic identity is re-checked here.
h12 = hadamard(12)
assert (h12 @ h12.T == 12 * np.eye(12, dtype=int)).all()
print("\nH(12) @ H(12)' == 12 * I: verified")

# Strength-2 orthogonal arrays, two ways.
oa = hadamard_to_oa(hadamard(8))          # 7 two-level rows, 8 columns
rao = oa_rao_hamming(field_new(3))        # 4 three-level rows, 9 columns
print("from H(8):       %d rows x %d columns" % (oa.rows, oa.columns))
print("Rao-Hamming GF3: %d rows x %d columns" % (rao.rows, rao.columns))
print("with zero row:   %d rows" % q_extend(rao).rows)

# The rational kit: a projector is the same matrix whichever pivoting
# order the g-inverse used -- that invariance is what makes 'adjusted
# for' well defined.
m = ratmat.rational([[2, 1], [0, 1], [2, 0], [4, 2]])
p_fwd = ratmat.projector(m)
p_rev = ratmat.projector(m, reverse=True)
assert (p_fwd == p_rev).all()
print("\nprojector entries (exact):")
for row in p_fwd:
    print("  ", [str(x) for x in row])
