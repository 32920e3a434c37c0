import numpy as np
import pytest

from localcoh import (IntMatrix, ModMatrix, Modulus, ModVector, counterexample, enumerate_group,
                      extend_to_dimension, gamma1, gamma2, h1_loc, is_coboundary,
                      is_locally_trivial, norm_torus_module, theorem1a_check, verify_counterexample)
from localcoh.errors import CapExceeded


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gamma1_is_the_shift_on_W(p):
    T = norm_torus_module(p)
    assert T.sigma == gamma1(p)
    assert T.eta == gamma2(p)
    # shift maps W to itself and has order p there
    for c in range(p - 1):
        assert T.W.contains(T.basis.column(c))
    assert T.sigma ** p == ModMatrix.identity(T.modulus, p - 1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gamma1_minimal_polynomial(p):
    # Phi_p(gamma1) = 1 + g + ... + g^{p-1} = 0 over Z, and g - 1 is non-singular over Q
    # centered lift: entries p^2-1 stand for -1
    g = IntMatrix.from_rows([[x if x <= p * p // 2 else x - p * p for x in row]
                             for row in gamma1(p).lift().to_rows()])
    power = IntMatrix.identity(p - 1)
    total = [list(r) for r in power.to_rows()]
    for _ in range(p - 1):
        power = power @ g
        total = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(total, power.to_rows())]
    assert all(x == 0 for row in total for x in row)
    minus = IntMatrix.from_rows([[x - (i == j) for j, x in enumerate(row)] for i, row in enumerate(g.to_rows())])
    assert minus.det() == p


@pytest.mark.parametrize("p", [3, 5, 7])
def test_counterexample_invariants(p):
    data = counterexample(p)
    assert len(data.group) == p * p
    assert is_coboundary(data.cocycle) is None
    assert is_locally_trivial(data.cocycle)[0]
    H = h1_loc(data.group)
    assert H.contains(data.cocycle) and H.class_order(data.cocycle) == p


def test_counterexample_p3_values():
    data = counterexample(3)
    assert data.v1.tolist() == [2, 1] and data.v2.tolist() == [3, 0]
    assert data.gamma2.tolist() == [[4, 0], [0, 4]]


@pytest.mark.parametrize("p", [3, 5])
def test_verify_passes(p):
    report = verify_counterexample(p)
    assert report.verdict, report.failed()
    assert report.to_dict()["schema"] == 1


def test_verify_jobs_equivalent():
    assert verify_counterexample(5, jobs=3).to_json() == verify_counterexample(5).to_json()


def test_verify_cap():
    with pytest.raises(CapExceeded):
        verify_counterexample(7, cap=40)


def test_verify_detects_bad_local_target():
    m = Modulus(3, 2)
    report = verify_counterexample(3, local_target=ModVector(m, [1, 0]))
    assert report.failed() == ["local_conditions"]


def test_verify_detects_bad_v2():
    m = Modulus(3, 2)
    report = verify_counterexample(3, v2_override=ModVector(m, [1, 0]))
    assert not report.verdict
    assert {"relation_gamma2", "cocycle_extension"} <= set(report.failed())


def test_verify_non_invertible_gamma1():
    m = Modulus(3, 2)
    report = verify_counterexample(3, gamma1_override=ModMatrix(m, [[0, 0], [0, 1]]))
    assert not report.verdict


@pytest.mark.parametrize("r", [2, 3, 4])
def test_extend_to_dimension(r):
    G, dim = extend_to_dimension(3, r)
    assert dim == r and G.dim == r and len(G) == 9
    assert h1_loc(G).invariant_factors == (3,)


def test_extend_to_dimension_rejects_small():
    with pytest.raises(ValueError):
        extend_to_dimension(5, 3)


def test_cyclic_sylow_criterion_cyclic_group():
    m = Modulus(3, 2)
    G = enumerate_group(m, 2, [gamma1(3)])
    report = theorem1a_check(G)
    assert report.verdict
    assert report.check("cyclic_sylow_criterion").values["applicable"]


def test_cyclic_sylow_criterion_inapplicable():
    report = theorem1a_check(counterexample(3).group)
    c = report.check("cyclic_sylow_criterion")
    assert report.verdict and not c.values["applicable"]
    assert c.values["note"] == "criterion inapplicable"
    assert c.values["h1_loc_invariant_factors"] == [3]


def test_cyclic_sylow_criterion_strips_non_p_part():
    m = Modulus(5, 1)
    # cyclic 5-Sylow inside a group of order 20 (upper triangular)
    G = enumerate_group(m, 2, [ModMatrix(m, [[1, 1], [0, 1]]), ModMatrix(m, [[2, 0], [0, 1]])])
    assert len(G) == 20
    report = theorem1a_check(G)
    assert report.check("sylow_extracted").values["order"] == 5
    assert report.verdict


def test_every_single_entry_mutation_detected():
    m = Modulus(3, 2)
    base = {"gamma1": gamma1(3).tolist(), "v1": [2, 1], "v2": [3, 0]}
    only_construction = []
    for name, value in base.items():
        cells = [(i, j) for i in range(2) for j in range(2)] if name == "gamma1" else [(i,) for i in range(2)]
        for cell in cells:
            for delta in range(1, 9):
                mutated = [list(row) for row in value] if name == "gamma1" else list(value)
                if name == "gamma1":
                    mutated[cell[0]][cell[1]] = (mutated[cell[0]][cell[1]] + delta) % 9
                    kwargs = {"gamma1_override": ModMatrix(m, mutated)}
                else:
                    mutated[cell[0]] = (mutated[cell[0]] + delta) % 9
                    kwargs = {f"{name}_override": ModVector(m, mutated)}
                failed = verify_counterexample(3, **kwargs).failed()
                assert failed, (name, mutated)
                if failed == ["data_matches_construction"]:
                    only_construction.append((name, mutated))
    # these shift the cocycle by another locally trivial cocycle, so the mutated
    # data still carries a non-trivial class; only the comparison with the
    # construction notices
    assert sorted(only_construction) == [("v1", [2, 4]), ("v1", [5, 1])]
