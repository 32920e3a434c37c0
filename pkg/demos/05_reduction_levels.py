# coding: utf-8

# # Reduction between levels
#
# Reducing a group mod p^j gives a quotient, and the kernel H^(j) is what
# the level-lifting argument has to control.

from localcoh import ModMatrix, Modulus, enumerate_group, extend_to_dimension, h1_loc, level_maps, reduce_mod

m = Modulus(3, 2)
g1 = ModMatrix(m, [[0, -1], [1, -1]])
g2 = ModMatrix.scalar(m, 2, 4)
G = enumerate_group(m, 2, [g1, g2])

red = reduce_mod(G, 1)
print("image order", len(red.image_group), "kernel", [G.element(i).tolist() for i in red.kernel_indices])

# ## Level maps
#
# 0 -> M_3 -> M_9 -> M_3 -> 0 induces maps on H^1_loc.  Their composite is
# always zero; exactness in the middle holds for <gamma1> but is not
# expected for G, where the kernel above is non-trivial.

for name, H in (("<gamma1>", enumerate_group(m, 2, [g1])), ("G", G)):
    lm = level_maps(H)
    print(name, lm.bottom.invariant_factors, lm.middle.invariant_factors, lm.top.invariant_factors,
          "eps*iota = 0:", lm.composition_zero, "exact:", lm.exact_at_middle)

# ## Padding with trivial coordinates changes nothing

for r in (2, 3, 4):
    H, _ = extend_to_dimension(3, r)
    print(r, h1_loc(H).invariant_factors)
