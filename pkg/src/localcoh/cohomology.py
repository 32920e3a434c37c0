"""First cohomology H^1(G, M) and its locally trivial part for M = (Z/p^jZ)^r.

G is an enumerated :class:`MatrixGroup` over Z/p^nZ and acts on M through
its matrices reduced mod p^j (j <= n), so one group can act on every
torsion level.

A cocycle is fixed by its values on the generators, and the table is
rebuilt along the breadth-first words: Z_{e s} = Z_e + e Z_s.  The
linear map from generator values to full tables is the "extension
matrix"; the generator values extend consistently iff
Z_{g s} = Z_g + g Z_s for every element g and generator s, which by
induction on word length gives the identity for every pair.  All
submodule work (cocycles, coboundaries, local conditions) therefore runs
in the |S|*r generator coordinates, and results are expanded to full
tables at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Mapping, Sequence

import numpy as np

from .errors import CapExceeded, InconsistentCocycle
from .matgroup import MatrixGroup, cyclic_subgroups
from .modring import ModMatrix, Modulus, ModVector, Submodule, _diagonalize, _kernel, _solve

MAX_ENTRIES = 20_000_000


def _module_modulus(G: MatrixGroup, modulus: Modulus | None) -> Modulus:
    if modulus is None:
        return G.modulus
    if modulus.p != G.modulus.p or modulus.n > G.modulus.n:
        raise ValueError(f"{G.modulus} cannot act on a module mod {modulus.value}")
    return modulus


class _Setting:
    """Action matrices and the extension matrix for one (G, level) pair."""

    def __init__(self, G: MatrixGroup, modulus: Modulus | None, max_entries: int = MAX_ENTRIES):
        self.G = G
        self.modulus = _module_modulus(G, modulus)
        self.q = q = self.modulus.value
        self.r = r = G.dim
        self.k = k = len(G.generators)
        self.N = N = len(G)
        if N * k * r * k * r > max_entries:
            raise CapExceeded(f"cocycle constraint matrix {N * k * r} x {k * r} exceeds {max_entries} entries")
        self.E = G.elements % q
        ext = np.zeros((N, r, k * r), dtype=np.int64)
        for idx in range(1, N):
            parent, s = G.parents[idx], G.words[idx][-1]
            ext[idx] = ext[parent]
            ext[idx, :, s * r:(s + 1) * r] += self.E[parent]
            ext[idx] %= q
        self.ext = ext

    def constraints(self) -> np.ndarray:
        """Rows whose kernel is the set of consistent generator values."""
        N, r, k, q = self.N, self.r, self.k, self.q
        if k == 0:
            return np.zeros((0, 0), dtype=np.int64)
        blocks = []
        mul = self.G.mul
        for s, si in enumerate(self.G.generator_indices):
            rows = self.ext[mul[:, si]] - self.ext
            rows[:, :, s * r:(s + 1) * r] -= self.E
            blocks.append(rows.reshape(N * r, k * r) % q)
        return np.vstack(blocks)

    def table(self, z: np.ndarray) -> np.ndarray:
        return np.einsum("gij,j->gi", self.ext, z) % self.q

    def generator_values(self, values: np.ndarray) -> np.ndarray:
        idx = list(self.G.generator_indices)
        return values[idx].reshape(-1) % self.q

    def cocycles(self) -> Submodule:
        if self.k == 0:
            return Submodule.zero(self.modulus, 0)
        return _kernel(self.constraints(), self.modulus)

    def coboundary_gens(self) -> list[np.ndarray]:
        q, r = self.q, self.r
        gi = list(self.G.generator_indices)
        shifted = (self.E[gi] - np.eye(r, dtype=np.int64)) % q      # (k, r, r)
        return [shifted[:, :, i].reshape(-1) for i in range(r)]

    def local_rows(self) -> np.ndarray:
        """Rows cutting out Z_g in Im(g-1) at each maximal cyclic generator."""
        p, n, q, r = self.modulus.p, self.modulus.n, self.q, self.r
        rows = []
        for c in cyclic_subgroups(self.G):
            g = c.generator
            d = _diagonalize((self.E[g] - np.eye(r, dtype=np.int64)) % q, self.modulus, left=True, right=False)
            for i in range(r):
                scale = p ** (n - d.valuations[i]) if i < len(d.valuations) else 1
                rows.append(scale * (d.U[i] @ self.ext[g]) % q)
        if not rows:
            return np.zeros((0, self.k * r), dtype=np.int64)
        return np.array(rows, dtype=np.int64)


class Cocycle:
    """A 1-cocycle stored as its full value table ``values[g] = Z_g``.

    The constructor checks Z_{gh} = Z_g + g Z_h for every pair of elements.
    """

    __slots__ = ("group", "modulus", "values")

    def __init__(self, group: MatrixGroup, values, modulus: Modulus | None = None, check: bool = True):
        self.group = group
        self.modulus = _module_modulus(group, modulus)
        q = self.modulus.value
        vals = np.array(values, dtype=np.int64).reshape(len(group), group.dim) % q
        vals.flags.writeable = False
        self.values = vals
        if check:
            bad = _first_violation(group, self.modulus, vals)
            if bad is not None:
                g, h = bad
                raise InconsistentCocycle(f"cocycle identity fails at (g, h) = ({g}, {h})")

    def __getitem__(self, i: int) -> ModVector:
        return ModVector(self.modulus, self.values[i])

    def at(self, g: ModMatrix) -> ModVector:
        return self[self.group.index_of(ModMatrix(self.group.modulus, g.entries))]

    def tolist(self) -> list[list[int]]:
        return self.values.tolist()

    def _same(self, other: "Cocycle"):
        if other.group is not self.group or other.modulus != self.modulus:
            raise ValueError("cocycles over different groups or modules")

    def __add__(self, other: "Cocycle") -> "Cocycle":
        self._same(other)
        return Cocycle(self.group, self.values + other.values, self.modulus, check=False)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        self._same(other)
        return Cocycle(self.group, self.values - other.values, self.modulus, check=False)

    def __rmul__(self, c: int) -> "Cocycle":
        return Cocycle(self.group, int(c) * self.values, self.modulus, check=False)

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        return (self.group is other.group and self.modulus == other.modulus
                and np.array_equal(self.values, other.values))

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.values.any()

    def __repr__(self):
        return f"Cocycle(|G|={len(self.group)}, mod {self.modulus.value}, values={self.values.tolist()})"


def _first_violation(G: MatrixGroup, modulus: Modulus, vals: np.ndarray):
    q = modulus.value
    if vals[0].any():
        return (0, 0)
    E = G.elements % q
    lhs = vals[G.mul]                                       # Z_{gh}
    rhs = vals[:, None, :] + np.einsum("gij,hj->ghi", E, vals)
    diff = (lhs - rhs) % q
    bad = np.argwhere(diff.any(axis=2))
    if len(bad):
        return tuple(int(x) for x in bad[0])
    return None


def cocycle_space(G: MatrixGroup, modulus: Modulus | None = None, method: str = "generators",
                  max_entries: int = MAX_ENTRIES) -> Submodule:
    """Z^1(G, M) as a submodule of M^{|G|} (tables flattened element-major).

    ``method="table"`` instead solves the |G|^2 identities on all |G|*r
    table entries directly; it is the slow independent route.
    """
    if method == "table":
        return _cocycle_space_table(G, _module_modulus(G, modulus), max_entries)
    if method != "generators":
        raise ValueError(f"unknown method {method!r}")
    st = _Setting(G, modulus, max_entries)
    N, r = st.N, st.r
    if st.k == 0:
        return Submodule.zero(st.modulus, N * r)
    K = st.cocycles()
    return Submodule(st.modulus, N * r, [st.table(z).reshape(-1) for z in K.basis])


def _cocycle_space_table(G: MatrixGroup, modulus: Modulus, max_entries: int) -> Submodule:
    N, r, q = len(G), G.dim, modulus.value
    if N * N * r * N * r > max_entries:
        raise CapExceeded(f"full cocycle table system exceeds {max_entries} entries")
    E = G.elements % q
    A = np.zeros((N, N, r, N, r), dtype=np.int64)
    eye = np.eye(r, dtype=np.int64)
    gi, hi = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    A[gi, hi, :, G.mul, :] += eye
    A[gi, hi, :, gi, :] -= eye
    for g in range(N):
        for h in range(N):
            A[g, h, :, h, :] -= E[g]
    A = A.reshape(N * N * r, N * r) % q
    extra = np.zeros((r, N * r), dtype=np.int64)
    extra[:, :r] = eye
    return _kernel(np.vstack([A, extra]), modulus)


def extend_from_generators(G: MatrixGroup, assignments, modulus: Modulus | None = None) -> Cocycle:
    """The unique cocycle with the given values on the generators.

    ``assignments`` is a sequence with one vector per generator, or a
    mapping from generator position to vector (missing ones are zero).
    """
    st = _Setting(G, modulus)
    r, q = st.r, st.q
    z = np.zeros(st.k * r, dtype=np.int64)
    items = assignments.items() if isinstance(assignments, Mapping) else enumerate(assignments)
    seen = 0
    for s, v in items:
        v = v.entries if isinstance(v, ModVector) else np.asarray(v, dtype=np.int64)
        if v.shape != (r,):
            raise ValueError(f"value for generator {s} has length {v.shape}, expected {r}")
        z[s * r:(s + 1) * r] = v % q
        seen += 1
    if not isinstance(assignments, Mapping) and seen != st.k:
        raise ValueError(f"expected {st.k} generator values, got {seen}")
    vals = st.table(z)
    if not np.array_equal(st.generator_values(vals), z):
        raise InconsistentCocycle("generator values disagree along the word table")
    return Cocycle(G, vals, st.modulus)


def coboundary(G: MatrixGroup, w, modulus: Modulus | None = None) -> Cocycle:
    """The cocycle g -> (g - 1) w."""
    m = _module_modulus(G, modulus)
    w = w.entries if isinstance(w, ModVector) else np.asarray(w, dtype=np.int64)
    vals = (np.einsum("gij,j->gi", G.elements % m.value, w) - w) % m.value
    return Cocycle(G, vals, m, check=False)


def coboundary_space(G: MatrixGroup, modulus: Modulus | None = None) -> Submodule:
    m = _module_modulus(G, modulus)
    N, r = len(G), G.dim
    gens = [coboundary(G, np.eye(r, dtype=np.int64)[i], m).values.reshape(-1) for i in range(r)]
    return Submodule(m, N * r, gens)


class H1Result:
    """A finite abelian quotient of cocycles by coboundaries.

    ``invariant_factors`` are p-powers in divisibility order, ``basis[i]``
    generates the cyclic factor of order ``invariant_factors[i]``, and
    :meth:`coordinates` returns the class of any cocycle in that basis.
    """

    def __init__(self, setting: _Setting, cycles: Submodule, boundary_gens: Sequence[np.ndarray]):
        self.group = setting.G
        self.modulus = setting.modulus
        self._st = setting
        self._cycles = cycles
        p, q = self.modulus.p, self.modulus.value
        S = cycles.basis                                     # h x D
        h = len(S)
        self._S = S
        if h == 0:
            self._U = np.zeros((0, 0), dtype=np.int64)
            self._slots: list[tuple[int, int]] = []
            self.invariant_factors: tuple[int, ...] = ()
            self.basis: tuple[Cocycle, ...] = ()
            return
        rel = list(_kernel(S.T, self.modulus).basis)
        for t in boundary_gens:
            c = _solve(S.T, t, self.modulus)
            if c is None:
                raise RuntimeError("coboundary outside the cocycle module")
            rel.append(c)
        R = np.array(rel, dtype=np.int64).reshape(len(rel), h).T    # columns are relations
        d = _diagonalize(R, self.modulus, left=True, right=False)
        slots = []
        for i in range(h):
            order = p ** d.valuations[i] if i < len(d.valuations) else q
            if order > 1:
                slots.append((i, order))
        self._U = d.U
        self._slots = slots
        self.invariant_factors = tuple(o for _, o in slots)
        self.basis = tuple(
            Cocycle(self.group, setting.table(d.Uinv[:, i] @ S % q), self.modulus, check=False)
            for i, _ in slots)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def contains(self, z: Cocycle) -> bool:
        return self._cycles.contains(self._st.generator_values(z.values)) if self._S.size else z.is_zero()

    def coordinates(self, z: Cocycle) -> tuple[int, ...]:
        """Coordinates of the class of ``z`` against :attr:`basis`."""
        if z.group is not self.group or z.modulus != self.modulus:
            raise ValueError("cocycle belongs to a different group or module")
        if not self._slots:
            if not self.contains(z):
                raise ValueError("cocycle is outside the cocycle module of this result")
            return ()
        c = _solve(self._S.T, self._st.generator_values(z.values), self.modulus)
        if c is None:
            raise ValueError("cocycle is outside the cocycle module of this result")
        y = self._U @ c % self.modulus.value
        return tuple(int(y[i]) % o for i, o in self._slots)

    def class_order(self, z: Cocycle) -> int:
        order = 1
        for c, o in zip(self.coordinates(z), self.invariant_factors):
            k = o // gcd(c, o)
            order = order * k // gcd(order, k)
        return order

    def __repr__(self):
        return f"H1Result(invariant_factors={list(self.invariant_factors)})"


def h1(G: MatrixGroup, modulus: Modulus | None = None, max_entries: int = MAX_ENTRIES) -> H1Result:
    st = _Setting(G, modulus, max_entries)
    if st.k == 0:
        return H1Result(st, Submodule.zero(st.modulus, 0), [])
    return H1Result(st, st.cocycles(), st.coboundary_gens())


def local_cocycles(G: MatrixGroup, modulus: Modulus | None = None, max_entries: int = MAX_ENTRIES) -> Submodule:
    """Cocycles satisfying the local conditions, as full tables."""
    st = _Setting(G, modulus, max_entries)
    N, r = st.N, st.r
    if st.k == 0:
        return Submodule.zero(st.modulus, N * r)
    K = _kernel(np.vstack([st.constraints(), st.local_rows()]), st.modulus)
    return Submodule(st.modulus, N * r, [st.table(z).reshape(-1) for z in K.basis])


def h1_loc(G: MatrixGroup, modulus: Modulus | None = None, max_entries: int = MAX_ENTRIES) -> H1Result:
    """Classes whose restriction to every cyclic subgroup is trivial."""
    st = _Setting(G, modulus, max_entries)
    if st.k == 0:
        return H1Result(st, Submodule.zero(st.modulus, 0), [])
    K = _kernel(np.vstack([st.constraints(), st.local_rows()]), st.modulus)
    return H1Result(st, K, st.coboundary_gens())


def is_locally_trivial(z: Cocycle) -> tuple[bool, dict[int, ModVector]]:
    """Whether Z_g lies in Im(g - 1) at each maximal cyclic generator g.

    Returns the verdict and, keyed by element index, a witness W_g with
    Z_g = (g - 1) W_g for every generator where one exists.
    """
    G, m = z.group, z.modulus
    q, r = m.value, G.dim
    witnesses: dict[int, ModVector] = {}
    ok = True
    for c in cyclic_subgroups(G):
        g = c.generator
        w = _solve((G.elements[g] - np.eye(r, dtype=np.int64)) % q, z.values[g], m)
        if w is None:
            ok = False
        else:
            witnesses[g] = ModVector(m, w)
    return ok, witnesses


def is_coboundary(z: Cocycle) -> ModVector | None:
    """A vector w with z = coboundary(w), or None."""
    G, m = z.group, z.modulus
    q, r = m.value, G.dim
    gi = list(G.generator_indices)
    if not gi:
        return ModVector.zeros(m, r)
    A = ((G.elements[gi] % q) - np.eye(r, dtype=np.int64)).reshape(-1, r) % q
    w = _solve(A, z.values[gi].reshape(-1), m)
    return None if w is None else ModVector(m, w)


@dataclass(frozen=True)
class LevelMaps:
    """Maps H^1_loc(M_p) -> H^1_loc(M_{p^n}) -> H^1_loc(M_{p^{n-1}}).

    ``iota`` and ``eps`` are integer matrices acting on class coordinates
    (columns indexed by source basis).
    """

    bottom: H1Result
    middle: H1Result
    top: H1Result
    iota: np.ndarray
    eps: np.ndarray
    composition_zero: bool
    exact_at_middle: bool


def _iota_star(z: Cocycle, target: Modulus) -> Cocycle:
    scale = target.p ** (target.n - 1)
    return Cocycle(z.group, scale * z.values, target, check=False)


def _eps_star(z: Cocycle, target: Modulus) -> Cocycle:
    return Cocycle(z.group, z.values, target, check=False)


def level_maps(G: MatrixGroup, max_entries: int = MAX_ENTRIES) -> LevelMaps:
    """Induced maps for 0 -> M_p -> M_{p^n} -> M_{p^{n-1}} -> 0 on H^1_loc.

    M_p embeds by multiplication by p^{n-1}; the second map is reduction
    mod p^{n-1}.  Exactness at the middle term is computed, not assumed.
    """
    m = G.modulus
    if m.n < 2:
        raise ValueError("level maps need n >= 2")
    low, high = m.at_level(1), m.at_level(m.n - 1)
    bottom = h1_loc(G, low, max_entries)
    middle = h1_loc(G, m, max_entries)
    top = h1_loc(G, high, max_entries)
    iota = np.array([middle.coordinates(_iota_star(b, m)) for b in bottom.basis],
                    dtype=np.int64).reshape(len(bottom.basis), len(middle.basis)).T
    eps = np.array([top.coordinates(_eps_star(b, high)) for b in middle.basis],
                   dtype=np.int64).reshape(len(middle.basis), len(top.basis)).T
    composition_zero = all(
        not any(top.coordinates(_eps_star(_iota_star(b, m), high))) for b in bottom.basis)
    exact = _kernel_equals_image(middle.invariant_factors, top.invariant_factors, iota, eps, m)
    return LevelMaps(bottom, middle, top, iota, eps, composition_zero, exact)


def _kernel_equals_image(mid: Sequence[int], top: Sequence[int], iota: np.ndarray, eps: np.ndarray,
                         m: Modulus) -> bool:
    # The middle group sum Z/d_i sits in (Z/p^n)^k with the subgroup sum d_i Z/p^n
    # standing for zero; image and kernel are compared as submodules containing it.
    k = len(mid)
    if k == 0:
        return True
    q = m.value
    zero_part = [np.eye(k, dtype=np.int64)[i] * d for i, d in enumerate(mid)]
    image = Submodule(m, k, [iota[:, j] % q for j in range(iota.shape[1])] + zero_part)
    if len(top):
        rows = np.array([(q // e) * eps[j] % q for j, e in enumerate(top)], dtype=np.int64)
        kernel = _kernel(rows, m)
    else:
        kernel = Submodule.full(m, k)
    return image == kernel
