# coding: utf-8

# # Enumerating finite matrix groups
#
# Groups are given by generators and enumerated breadth first.  Every
# element remembers the word that produced it.

from localcoh import (ModMatrix, Modulus, cyclic_subgroups, element_order, elementary_abelian_profile,
                      enumerate_group, sylow_p)

m = Modulus(3, 2)
g1 = ModMatrix(m, [[0, -1], [1, -1]])
two = ModMatrix.scalar(m, 2, 2)

G = enumerate_group(m, 2, [g1, two])
print(G)
for i in range(6):
    print(i, G.words[i], G.element(i).tolist(), "order", element_order(G, i))

# ## Maximal cyclic subgroups
#
# These are where the local conditions get imposed later on.

for c in cyclic_subgroups(G):
    print("generator", c.generator, "order", c.order)

# ## The 3-Sylow subgroup
#
# Here it is normal, so the 3-elements close up to a group of order 9.

S = sylow_p(G)
print("Sylow order", len(S), "elementary abelian of rank", elementary_abelian_profile(S))
