"""The norm-one torus counterexample and its verification scenarios.

Only the finite shadow is modelled: the p^2-torsion of the norm-one torus
of a cyclic degree-p extension is the sum-zero submodule W of (Z/p^2)^p,
the generator of the cyclic Galois group shifts coordinates, and the
cyclotomic automorphism zeta -> zeta^(p+1) acts as the scalar p+1.  The
existence of the number fields themselves is taken as given.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .cohomology import (Cocycle, extend_from_generators, h1_loc, is_coboundary,
                         is_locally_trivial, cocycle_space)
from .errors import CapExceeded, InconsistentCocycle, NotInvertible
from .matgroup import (DEFAULT_CAP, MatrixGroup, block_sum, elementary_abelian_profile,
                       element_order, enumerate_group, sylow_p)
from .modring import (ModMatrix, Modulus, ModVector, Submodule, image_submodule,
                      kernel_submodule, smith_normal_form, solve_linear)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Check:
    name: str
    passed: bool
    values: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "values": self.values}


@dataclass
class VerificationReport:
    scenario: str
    parameters: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, **values) -> Check:
        c = Check(name, bool(passed), values)
        self.checks.append(c)
        return c

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "scenario": self.scenario,
            "parameters": self.parameters,
            "assumptions": self.assumptions,
            "checks": [c.to_dict() for c in self.checks],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# constructions


def _odd_prime_modulus(p: int, n: int = 2) -> Modulus:
    return Modulus(p, n)


def gamma1(p: int) -> ModMatrix:
    """Ones on the subdiagonal, -1 down the last column, over Z/p^2."""
    r = p - 1
    a = np.zeros((r, r), dtype=np.int64)
    a[np.arange(1, r), np.arange(r - 1)] = 1
    a[:, -1] = -1
    return ModMatrix(_odd_prime_modulus(p), a)


def gamma2(p: int) -> ModMatrix:
    return ModMatrix.scalar(_odd_prime_modulus(p), p - 1, p + 1)


def cocycle_vectors(p: int) -> tuple[ModVector, ModVector]:
    """Generator values (p-1, 0, ..., 0, 1) and (p, ..., p, 0)."""
    m = _odd_prime_modulus(p)
    r = p - 1
    v1 = [p - 1] + [0] * (r - 2) + [1]
    v2 = [p] * (r - 1) + [0]
    return ModVector(m, v1), ModVector(m, v2)


@dataclass(frozen=True)
class NormTorusModule:
    p: int
    modulus: Modulus
    shift: ModMatrix          # p x p coordinate shift on (Z/p^2)^p
    basis: ModMatrix          # p x (p-1), columns v, sigma v, ..., sigma^{p-2} v
    W: Submodule              # sum-zero vectors
    sigma: ModMatrix          # shift in the basis
    eta: ModMatrix            # scalar p+1 in the basis


def norm_torus_module(p: int) -> NormTorusModule:
    m = _odd_prime_modulus(p)
    shift = np.zeros((p, p), dtype=np.int64)
    shift[np.arange(p), (np.arange(p) - 1) % p] = 1     # (sigma x)_i = x_{i-1}
    shift = ModMatrix(m, shift)
    v = np.zeros(p, dtype=np.int64)
    v[0], v[1] = 1, -1
    cols = [ModVector(m, v)]
    for _ in range(p - 2):
        cols.append(shift @ cols[-1])
    basis = ModMatrix(m, np.array([c.entries for c in cols]).T)
    W = kernel_submodule(ModMatrix(m, np.ones((1, p), dtype=np.int64)))

    def in_basis(image: ModMatrix) -> ModMatrix:
        out = []
        for j in range(image.cols):
            x, _ = solve_linear(basis, image.column(j))
            if x is None:
                raise RuntimeError("image left the span of the basis")
            out.append(x.entries)
        return ModMatrix(m, np.array(out).T)

    sigma = in_basis(shift @ basis)
    eta = in_basis((p + 1) * basis)
    return NormTorusModule(p, m, shift, basis, W, sigma, eta)


@dataclass(frozen=True)
class CounterexampleData:
    p: int
    group: MatrixGroup
    gamma1: ModMatrix
    gamma2: ModMatrix
    v1: ModVector
    v2: ModVector
    cocycle: Cocycle


def counterexample(p: int, cap: int = DEFAULT_CAP) -> CounterexampleData:
    m = _odd_prime_modulus(p)
    if p * p > cap:
        raise CapExceeded(f"group of order {p * p} exceeds cap {cap}")
    g1, g2 = gamma1(p), gamma2(p)
    ident = ModMatrix.identity(m, p - 1)
    if g1**p != ident or g2**p != ident or g1 @ g2 != g2 @ g1:
        raise RuntimeError("generator relations fail")
    G = enumerate_group(m, p - 1, [g1, g2], cap=cap)
    v1, v2 = cocycle_vectors(p)
    Z = extend_from_generators(G, [v1, v2])
    return CounterexampleData(p, G, g1, g2, v1, v2, Z)


def _sum_powers(g: ModMatrix, k: int) -> ModMatrix:
    """1 + g + ... + g^(k-1)."""
    total = ModMatrix(g.modulus, np.zeros(g.shape, dtype=np.int64))
    power = ModMatrix.identity(g.modulus, g.rows)
    for _ in range(k):
        total = total + power
        power = power @ g
    return total


def _per_h(p, g1, g2, ident, v1, v2, target_override, V, hs):
    """Determinant, image, Smith form and local-condition data for g1 g2^h."""
    rows = []
    for h in hs:
        g = g1 @ g2**h
        a = g - ident
        det = a.det()
        img = image_submodule(a)
        snf = smith_normal_form(a.lift()).invariant_factors
        vals = [_valuation(x, p) for x in snf]
        target = target_override if target_override is not None else v1 + g1 @ (_sum_powers(g2, h) @ v2)
        w, _ = solve_linear(a, target)
        rows.append(dict(h=h, det=det, image_index=img.index(), image_is_V=img == V,
                         snf=list(snf), snf_valuations=vals, target=target.tolist(),
                         witness=None if w is None else w.tolist()))
    return rows


def _valuation(x: int, p: int) -> int | None:
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def verify_counterexample(p: int, *, gamma1_override: ModMatrix | None = None,
                          v1_override: ModVector | None = None,
                          v2_override: ModVector | None = None,
                          local_target: ModVector | None = None,
                          cap: int = DEFAULT_CAP, jobs: int = 1) -> VerificationReport:
    """Check every finite claim about the counterexample at prime p.

    The overrides replace one input datum so that corrupted scenarios can
    be run; ``local_target`` replaces every Z_{g1 g2^h} in the local check.
    Resource limits raise :class:`CapExceeded` instead of failing a check.
    """
    m = _odd_prime_modulus(p)
    if p * p > cap:
        raise CapExceeded(f"group of order {p * p} exceeds cap {cap}")
    r = p - 1
    g1 = gamma1_override if gamma1_override is not None else gamma1(p)
    g2 = gamma2(p)
    dv1, dv2 = cocycle_vectors(p)
    v1 = v1_override if v1_override is not None else dv1
    v2 = v2_override if v2_override is not None else dv2
    ident = ModMatrix.identity(m, r)
    zero = ModVector.zeros(m, r)

    report = VerificationReport(
        "verify-counterexample",
        {"p": p, "n": 2, "dimension": r, "gamma1": g1.tolist(), "gamma2": g2.tolist(),
         "v1": v1.tolist(), "v2": v2.tolist()},
        assumptions=[
            "a cyclic degree-p field L disjoint from Q(zeta_{p^2}) exists (Dirichlet)",
            "cyclic subgroups stand in for decomposition groups (Chebotarev)",
        ])

    torus = norm_torus_module(p)
    report.add("data_matches_construction",
               g1 == torus.sigma and g2 == torus.eta and v1 == dv1 and v2 == dv2,
               gamma1_is_shift_action=g1 == torus.sigma, gamma2_is_eta_action=g2 == torus.eta,
               v1_is_displayed=v1 == dv1, v2_is_displayed=v2 == dv2)

    relations_ok = g1**p == ident and g2**p == ident and g1 @ g2 == g2 @ g1
    report.add("group_relations", relations_ok,
               gamma1_order_divides_p=g1**p == ident, gamma2_order_divides_p=g2**p == ident,
               commute=g1 @ g2 == g2 @ g1)

    rel1 = _sum_powers(g1, p) @ v1
    rel2 = _sum_powers(g2, p) @ v2
    rel3 = (ident - g2) @ v1 + (g1 - ident) @ v2
    report.add("relation_gamma1", rel1 == zero, value=rel1.tolist())
    report.add("relation_gamma2", rel2 == zero, value=rel2.tolist())
    report.add("relation_commutator", rel3 == zero, value=rel3.tolist())

    stacked = ModMatrix(m, np.vstack([(g1 - ident).entries, (g2 - ident).entries]))
    rhs = ModVector(m, np.concatenate([v1.entries, v2.entries]))
    w, _ = solve_linear(stacked, rhs)
    report.add("non_coboundary", w is None, solution=None if w is None else w.tolist())

    M = image_submodule(p * ident)
    V = kernel_submodule(ModMatrix(m, p * np.ones((1, r), dtype=np.int64)))
    w2, _ = solve_linear(g2 - ident, v2)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(lambda h: _per_h(p, g1, g2, ident, v1, v2, local_target, V, [h]), range(p))
            per_h = [row for part in parts for row in part]
    else:
        per_h = _per_h(p, g1, g2, ident, v1, v2, local_target, V, range(p))

    witnesses = [{"element": "gamma2", "target": v2.tolist(),
                  "witness": None if w2 is None else w2.tolist()}]
    witnesses += [{"element": f"gamma1*gamma2^{row['h']}", "target": row["target"],
                   "witness": row["witness"]} for row in per_h]
    report.add("local_conditions", all(x["witness"] is not None for x in witnesses), witnesses=witnesses)
    report.add("determinants", all(row["det"] == p for row in per_h),
               det_mod_p2=[row["det"] for row in per_h])
    report.add("image_equals_V",
               all(row["image_is_V"] and row["image_index"] == p for row in per_h)
               and V.index() == p and M.issubset(V) and M.index() == p**r,
               indices=[row["image_index"] for row in per_h], V_index=V.index(), M_index=M.index())
    report.add("smith_normal_form",
               all(sorted(v for v in row["snf_valuations"] if v) == [1]
                   and all(v is not None for v in row["snf_valuations"]) for row in per_h),
               invariant_factors=[row["snf"] for row in per_h])

    group_checks = ("group_structure", "cocycle_extension", "h1_loc_nontrivial")
    if not relations_ok:
        for name in group_checks:
            report.add(name, False, skipped="generator relations fail")
        return report
    try:
        G = enumerate_group(m, r, [g1, g2], cap=cap)
    except NotInvertible as exc:
        for name in group_checks:
            report.add(name, False, skipped=str(exc))
        return report
    b = elementary_abelian_profile(G)
    report.add("group_structure", len(G) == p * p and b == 2, order=len(G), elementary_abelian_rank=b)

    try:
        Z = extend_from_generators(G, [v1, v2])
    except InconsistentCocycle as exc:
        report.add("cocycle_extension", False, error=str(exc))
        report.add("h1_loc_nontrivial", False, skipped="no cocycle")
        return report
    # a cocycle vanishing on both generators is zero: the table is unique
    Z1 = cocycle_space(G)
    gi = G.generator_indices
    vanishing = [row for row in Z1.basis
                 if not row.reshape(len(G), r)[list(gi)].any()]
    local_ok, local_w = is_locally_trivial(Z)
    report.add("cocycle_extension", not vanishing,
               table_unique=not vanishing, locally_trivial=local_ok,
               table=Z.tolist())

    H = h1_loc(G)
    in_loc = H.contains(Z)
    order = H.class_order(Z) if in_loc else None
    report.add("h1_loc_nontrivial", bool(H.invariant_factors) and in_loc and order == p
               and is_coboundary(Z) is None,
               invariant_factors=list(H.invariant_factors), class_coordinates=list(H.coordinates(Z)) if in_loc else None,
               class_order=order)
    return report


def extend_to_dimension(p: int, r: int, cap: int = DEFAULT_CAP) -> tuple[MatrixGroup, int]:
    """The counterexample group padded with r-(p-1) trivial coordinates."""
    if r < p - 1:
        raise ValueError(f"dimension {r} is below p-1 = {p - 1}")
    G = counterexample(p, cap).group
    return block_sum(G, r - (p - 1)), r


def theorem1a_check(G: MatrixGroup, r: int | None = None, p: int | None = None,
                    n: int | None = None) -> VerificationReport:
    """Cyclic-Sylow criterion: a cyclic p-Sylow forces H^1_loc = 0."""
    r = G.dim if r is None else r
    p = G.modulus.p if p is None else p
    n = G.modulus.n if n is None else n
    report = VerificationReport("theorem1a-check", {"p": p, "n": n, "dimension": r, "group_order": len(G)})
    S = sylow_p(G)
    cyclic = any(element_order(S, i) == len(S) for i in range(len(S)))
    report.add("sylow_extracted", True, order=len(S),
               generators=[g.tolist() for g in S.generators])
    H = h1_loc(S)
    # a cyclic Sylow forces triviality in any dimension; r < p-1 is what
    # guarantees a cyclic Sylow for torus groups
    applicable = cyclic
    report.add("cyclic_sylow_criterion",
               (not applicable) or H.is_trivial(),
               applicable=applicable, sylow_cyclic=cyclic, dimension_below_p_minus_1=r < p - 1,
               h1_loc_invariant_factors=list(H.invariant_factors),
               note=None if applicable and r < p - 1 else "criterion inapplicable")
    return report
