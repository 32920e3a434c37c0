"""First and locally trivial cohomology of finite matrix groups over Z/p^nZ.

Includes the norm-one torus of dimension p-1 whose p^2-torsion carries a
non-trivial locally trivial class, and the tools to verify it.
"""

from .cohomology import (Cocycle, H1Result, LevelMaps, coboundary, coboundary_space,
                         cocycle_space, extend_from_generators, h1, h1_loc, is_coboundary,
                         is_locally_trivial, level_maps, local_cocycles)
from .errors import CapExceeded, InconsistentCocycle, NotInvertible, SylowError
from .matgroup import (CyclicSubgroup, MatrixGroup, ReductionResult, block_sum, cyclic_subgroups,
                       element_order, elementary_abelian_profile, enumerate_group,
                       integer_group_elements, reduce_mod, reduction_preserves_order, sylow_p)
from .modring import (IntMatrix, ModMatrix, Modulus, ModVector, SNFResult, Submodule,
                      image_submodule, kernel_submodule, mat_mul, smith_normal_form,
                      solve_linear)
from .torus import (CounterexampleData, NormTorusModule, VerificationReport, counterexample,
                    extend_to_dimension, gamma1, gamma2, norm_torus_module, theorem1a_check,
                    verify_counterexample)

__version__ = "0.1.0"
