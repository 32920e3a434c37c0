# coding: utf-8

# # Linear algebra over Z/9Z
#
# Z/p^nZ is not a field, so "solve a linear system" means something a bit
# different: a system can fail to be solvable even though the matrix has
# full rank mod p^n, because a pivot is only a power of p.

import numpy as np

from localcoh import IntMatrix, ModMatrix, Modulus, ModVector, image_submodule, smith_normal_form, solve_linear

m = Modulus(3, 2)
g = ModMatrix(m, [[0, -1], [1, -1]])   # rotation of order 3
print(g)
print("g^3 == Id:", g @ g @ g == ModMatrix.identity(m, 2))

# ## Solving (g - 1) w = b
#
# det(g - 1) = 3, which is not a unit mod 9.  Some right-hand sides are hit,
# some are not.

a = g.minus_identity()
print("det(g - 1) =", a.det())
for b in ([2, 1], [1, 0]):
    x, kernel = solve_linear(a, ModVector(m, b))
    print(b, "->", None if x is None else x.tolist(), "kernel size", kernel.size())

# ## The image as a submodule
#
# Submodules are kept in a canonical echelon form, so equality is just
# comparison of bases.  The image of g - 1 has index 3 in (Z/9)^2.

img = image_submodule(a)
print("basis:\n", img.basis)
print("index:", img.index(), "size:", img.size())

# ## Smith normal form over the integers
#
# The same information, seen from Z.  The lift uses representatives in
# [0, 9), so the determinant is 48; only its 3-part, 3, matters mod 9.

res = smith_normal_form(a.lift())
print("invariant factors:", res.invariant_factors)
print("U A V == S:", res.U @ a.lift() @ res.V == res.S)

# A random integer matrix, for comparison.
rng = np.random.default_rng(0)
A = IntMatrix.from_rows(rng.integers(-20, 21, size=(4, 5)).tolist())
print(smith_normal_form(A).invariant_factors)
