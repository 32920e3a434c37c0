# coding: utf-8

# # The norm-one torus at p^2
#
# Sum-zero vectors in (Z/p^2)^p with the cyclic shift, plus the scalar
# p + 1.  In a basis of p - 1 vectors the shift becomes gamma1 and the
# scalar becomes gamma2.

import time

from localcoh import h1_loc, norm_torus_module, verify_counterexample

for p in (3, 5):
    T = norm_torus_module(p)
    print(f"p = {p}: gamma1 =")
    print(T.sigma)

# ## Verifying the whole construction
#
# Every check is exact modular arithmetic.

for p in (3, 5, 7):
    t = time.perf_counter()
    report = verify_counterexample(p)
    print(f"p = {p}: {'verified' if report.verdict else 'FAILED ' + str(report.failed())}"
          f" in {time.perf_counter() - t:.2f}s")
    print("   H^1_loc:", report.check("h1_loc_nontrivial").values["invariant_factors"])

# ## What a mutation looks like
#
# Change one entry of v2 and watch the relations break.

from localcoh import Modulus, ModVector  # noqa: E402

bad = verify_counterexample(3, v2_override=ModVector(Modulus(3, 2), [1, 0]))
print(bad.failed())
