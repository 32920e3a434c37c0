"""Finite subgroups of GL_r(Z/p^nZ) enumerated from generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import CapExceeded, NotInvertible, SylowError
from .modring import IntMatrix, ModMatrix, Modulus, block_diag

DEFAULT_CAP = 4096


def _keys(mats: np.ndarray) -> np.ndarray:
    flat = np.ascontiguousarray(mats.reshape(mats.shape[0], -1))
    return flat.view(np.dtype((np.void, flat.dtype.itemsize * flat.shape[1]))).ravel()


class MatrixGroup:
    """A finite matrix group with a breadth-first element table.

    Element 0 is the identity.  Element ``i`` is the product of the
    generators along ``words[i]``, read left to right, and it was first
    reached as ``elements[parents[i]] @ generators[words[i][-1]]``.
    ``mul[i, j]`` is the index of ``elements[i] @ elements[j]``.
    """

    def __init__(self, modulus: Modulus, dim: int, generators: Sequence[ModMatrix],
                 elements: np.ndarray, words, parents, cap: int = DEFAULT_CAP):
        self.modulus = modulus
        self.dim = dim
        self.generators = tuple(generators)
        self.elements = elements
        self.elements.flags.writeable = False
        self.words = tuple(words)
        self.parents = tuple(parents)
        self.cap = cap
        keys = _keys(elements)
        self._order = np.argsort(keys, kind="stable")
        self._sorted = keys[self._order]

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def element(self, i: int) -> ModMatrix:
        return ModMatrix(self.modulus, self.elements[i])

    def lookup(self, mats: np.ndarray) -> np.ndarray:
        """Element indices of a stack of matrices; -1 where absent."""
        mats = np.asarray(mats, dtype=np.int64).reshape(-1, self.dim, self.dim) % self.modulus.value
        keys = _keys(mats)
        pos = np.searchsorted(self._sorted, keys)
        pos = np.minimum(pos, len(self._sorted) - 1)
        found = self._sorted[pos] == keys
        return np.where(found, self._order[pos], -1)

    def index_of(self, g: ModMatrix) -> int:
        idx = int(self.lookup(g.entries)[0])
        if idx < 0:
            raise KeyError("matrix is not an element of this group")
        return idx

    def __contains__(self, g: ModMatrix) -> bool:
        return g.shape == (self.dim, self.dim) and int(self.lookup(g.entries)[0]) >= 0

    @cached_property
    def mul(self) -> np.ndarray:
        q = self.modulus.value
        N = len(self)
        table = np.empty((N, N), dtype=np.int64)
        for i in range(N):
            table[i] = self.lookup(np.matmul(self.elements[i], self.elements) % q)
        if (table < 0).any():
            raise RuntimeError("element table is not closed under multiplication")
        table.flags.writeable = False
        return table

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in self.lookup(np.array([g.entries for g in self.generators])
                                                 .reshape(-1, self.dim, self.dim))) if self.generators else ()

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmax(self.mul == 0, axis=1)
        inv.flags.writeable = False
        return inv

    def power_indices(self, i: int) -> list[int]:
        """Indices of g^0, g^1, ... up to the order of g."""
        out = [0]
        j = i
        mul = self.mul
        while j != 0:
            out.append(j)
            j = int(mul[j, i])
        return out

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def closure(self, gens: Sequence[int]) -> list[int]:
        """Indices of the subgroup generated by the given element indices."""
        seen = {0}
        order = [0]
        queue = deque([0])
        mul = self.mul
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(mul[x, g])
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order

    def __repr__(self):
        return f"MatrixGroup(order={len(self)}, dim={self.dim}, mod {self.modulus.value})"


def enumerate_group(modulus: Modulus, r: int, generators: Sequence[ModMatrix],
                    cap: int = DEFAULT_CAP) -> MatrixGroup:
    """Breadth-first enumeration of the group generated by ``generators``.

    Raises :class:`NotInvertible` for a generator singular mod p and
    :class:`CapExceeded` when the group grows past ``cap`` elements.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    q = modulus.value
    gens = []
    for g in generators:
        if not isinstance(g, ModMatrix):
            g = ModMatrix(modulus, g)
        if g.modulus != modulus or g.shape != (r, r):
            raise ValueError(f"generator {g} is not an element of Mat_{r}(Z/{q}Z)")
        if g.det() % modulus.p == 0:
            raise NotInvertible(f"generator {g.tolist()} is not invertible mod {modulus.p}")
        gens.append(g)
    ident = np.eye(r, dtype=np.int64)
    elements = [ident]
    seen = {ident.tobytes(): 0}
    words: list[tuple[int, ...]] = [()]
    parents = [-1]
    i = 0
    while i < len(elements):
        for k, g in enumerate(gens):
            prod = elements[i] @ g.entries % q
            key = prod.tobytes()
            if key not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                seen[key] = len(elements)
                elements.append(prod)
                words.append(words[i] + (k,))
                parents.append(i)
        i += 1
    return MatrixGroup(modulus, r, gens, np.array(elements, dtype=np.int64).reshape(-1, r, r),
                       words, parents, cap)


def element_order(G: MatrixGroup, i: int) -> int:
    return len(G.power_indices(i))


@dataclass(frozen=True)
class CyclicSubgroup:
    generator: int
    order: int
    element_indices: tuple[int, ...]


def cyclic_subgroups(G: MatrixGroup) -> tuple[CyclicSubgroup, ...]:
    """The maximal cyclic subgroups of G, each with its lowest-index generator.

    The trivial subgroup is never reported, so the trivial group yields an
    empty tuple.
    """
    first: dict[tuple[int, ...], int] = {}
    for i in range(1, len(G)):
        key = tuple(sorted(G.power_indices(i)))
        first.setdefault(key, i)
    by_size = sorted(first, key=lambda s: (-len(s), first[s]))
    maximal: list[frozenset] = []
    kept = []
    for s in by_size:
        fs = frozenset(s)
        if not any(fs < m for m in maximal):
            maximal.append(fs)
            kept.append(s)
    out = [CyclicSubgroup(first[s], len(s), s) for s in kept]
    return tuple(sorted(out, key=lambda c: c.generator))


def _p_part(order: int, p: int) -> int:
    pa = 1
    while order % p == 0:
        order //= p
        pa *= p
    return pa


def sylow_p(G: MatrixGroup, p: int | None = None) -> MatrixGroup:
    """The p-Sylow subgroup, assuming the p-elements generate a p-group.

    Raises :class:`SylowError` when they do not (non-normal Sylow).
    """
    p = G.modulus.p if p is None else p
    target = _p_part(len(G), p)
    if target == len(G):
        return G
    gens: list[int] = []
    members = {0}
    for i in range(1, len(G)):
        if i in members:
            continue
        o = element_order(G, i)
        if _p_part(o, p) != o:
            continue
        gens.append(i)
        members = set(G.closure(gens))
        if len(members) > target:
            raise SylowError(f"p-elements generate a subgroup larger than {target}; "
                             "the Sylow subgroup is not normal")
    if len(members) != target:
        raise SylowError(f"p-elements close to order {len(members)}, expected {target}")
    return enumerate_group(G.modulus, G.dim, [G.element(i) for i in gens], cap=G.cap)


@dataclass(frozen=True)
class ReductionResult:
    image_group: MatrixGroup
    kernel_indices: tuple[int, ...]
    projection: np.ndarray


def reduce_mod(G: MatrixGroup, j: int) -> ReductionResult:
    """Reduction of G modulo p^j, with its kernel and element-index map."""
    n = G.modulus.n
    if not 1 <= j <= n:
        raise ValueError(f"level j must satisfy 1 <= j <= {n}")
    if j == n:
        proj = np.arange(len(G))
        return ReductionResult(G, (0,), proj)
    sub = G.modulus.at_level(j)
    gens = [ModMatrix(sub, g.entries) for g in G.generators]
    image = enumerate_group(sub, G.dim, gens, cap=G.cap)
    proj = image.lookup(G.elements)
    if (proj < 0).any():
        raise RuntimeError("reduced element missing from the image group")
    if not np.array_equal(proj[G.mul], image.mul[proj[:, None], proj[None, :]]):
        raise RuntimeError("reduction is not a homomorphism on the element table")
    proj.flags.writeable = False
    kernel = tuple(int(i) for i in np.flatnonzero(proj == 0))
    return ReductionResult(image, kernel, proj)


def elementary_abelian_profile(G: MatrixGroup) -> int | None:
    """b with G isomorphic to (Z/pZ)^b, or None when G is not of that shape."""
    p = G.modulus.p
    if len(G) == 1:
        return 0
    if not G.is_abelian():
        return None
    if any(element_order(G, i) != p for i in range(1, len(G))):
        return None
    b, size = 0, len(G)
    while size > 1:
        size //= p
        b += 1
    return b


def block_sum(G: MatrixGroup, s: int) -> MatrixGroup:
    """G acting as diag(g, Id_s) on s extra trivial coordinates."""
    if s < 0:
        raise ValueError("s must be >= 0")
    if s == 0:
        return G
    ident = ModMatrix.identity(G.modulus, s)
    gens = [block_diag(g, ident) for g in G.generators]
    return enumerate_group(G.modulus, G.dim + s, gens, cap=G.cap)


def integer_group_elements(generators: Sequence[IntMatrix], cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """Exact enumeration of a finite subgroup of GL_r(Z).

    Raises :class:`CapExceeded` when the closure passes ``cap`` elements,
    which is also what an infinite group does.
    """
    if not generators:
        return [()]
    r = generators[0].rows
    for g in generators:
        if g.rows != r or g.cols != r:
            raise ValueError("generators must all be r x r")
        if g.det() not in (1, -1):
            raise NotInvertible(f"generator {g.to_rows()} is not in GL_{r}(Z)")
    ident = IntMatrix.identity(r)
    seen = {ident.entries}
    order = [ident]
    i = 0
    while i < len(order):
        for g in generators:
            prod = order[i] @ g
            if prod.entries not in seen:
                if len(order) >= cap:
                    raise CapExceeded(f"integer group exceeds cap {cap} (infinite or too large)")
                seen.add(prod.entries)
                order.append(prod)
        i += 1
    return [m.entries for m in order]


def reduction_preserves_order(generators: Sequence[IntMatrix], p: int,
                              cap: int = DEFAULT_CAP) -> tuple[int, int]:
    """Orders of an integer matrix group and of its reduction mod p."""
    integer_order = len(integer_group_elements(generators, cap))
    if not generators:
        return integer_order, 1
    modulus = Modulus(p, 1)
    r = generators[0].rows
    image = enumerate_group(modulus, r, [g.reduce(modulus) for g in generators], cap=cap)
    return integer_order, len(image)
