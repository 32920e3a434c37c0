# coding: utf-8

# # H^1 and locally trivial classes
#
# A cocycle is a map g -> Z_g with Z_gh = Z_g + g Z_h.  It is a coboundary
# when Z_g = (g - 1) w for a single w, and locally trivial when each Z_g is
# of that shape for its own w_g.  Locally trivial modulo coboundaries is
# H^1_loc.

from localcoh import (ModMatrix, Modulus, ModVector, cocycle_space, coboundary_space, enumerate_group,
                      extend_from_generators, h1, h1_loc, is_coboundary, is_locally_trivial)

m = Modulus(3, 2)
g1 = ModMatrix(m, [[0, -1], [1, -1]])
g2 = ModMatrix.scalar(m, 2, 4)
G = enumerate_group(m, 2, [g1, g2])

print("|Z^1| =", cocycle_space(G).size(), " |B^1| =", coboundary_space(G).size())
print("H^1     :", h1(G).invariant_factors)
print("H^1_loc :", h1_loc(G).invariant_factors)

# ## One explicit class
#
# Z is fixed by its values on the two generators.

Z = extend_from_generators(G, [ModVector(m, [2, 1]), ModVector(m, [3, 0])])
ok, witnesses = is_locally_trivial(Z)
print("locally trivial:", ok)
for gi, w in witnesses.items():
    print("  at", G.element(gi).tolist(), "w =", w.tolist())
print("coboundary:", is_coboundary(Z) is not None)
H = h1_loc(G)
print("coordinates", H.coordinates(Z), "order", H.class_order(Z))

# ## Cyclic groups never have any
#
# The whole group is one of its own cyclic subgroups, so the local
# condition at the generator is already the global one.

C = enumerate_group(m, 2, [g1])
print("cyclic H^1_loc trivial:", h1_loc(C).is_trivial())
