"""Exact linear algebra over Z/p^nZ and over the integers.

Z/p^nZ is a chain ring: every element is a unit times a power of p, so an
entry of minimal p-valuation divides every other entry of a matrix.  All
modular elimination below exploits that, which makes it the mod-p^n
shadow of the integer Smith normal form with the relations p^n*e_i
adjoined.

Modular data lives in read-only ``int64`` numpy arrays with entries in
``[0, p^n)``.  Integer matrices use Python ints, so they never wrap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import CapExceeded

# Row operations multiply two residues and sum along a row; keeping
# p^n below 2**20 leaves int64 headroom for ~2**22-term sums.
MAX_MODULUS = 1 << 20


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Modulus:
    """The ring Z/p^nZ for an odd prime p."""

    p: int
    n: int
    value: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p!r}")
        if int(self.n) < 1:
            raise ValueError(f"exponent must be >= 1, got {self.n!r}")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "n", int(self.n))
        value = self.p**self.n
        if value > MAX_MODULUS:
            raise CapExceeded(f"modulus {self.p}^{self.n} exceeds supported width {MAX_MODULUS}")
        object.__setattr__(self, "value", value)

    def __repr__(self):
        return f"Modulus({self.p}^{self.n})"

    def at_level(self, j: int) -> "Modulus":
        return Modulus(self.p, j)

    def valuation(self, x: int) -> int:
        """p-adic valuation of a residue; zero has valuation n."""
        x = int(x) % self.value
        if x == 0:
            return self.n
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def inverse(self, u: int) -> int:
        return pow(int(u), -1, self.value)


def _valuations(arr: np.ndarray, p: int, n: int) -> np.ndarray:
    v = np.zeros(arr.shape, dtype=np.int64)
    pk = 1
    for _ in range(n):
        pk *= p
        v += arr % pk == 0
    return v


def _reduce_array(data, q: int, ndim: int) -> np.ndarray:
    if isinstance(data, np.ndarray) and data.dtype != object:
        arr = np.array(data, dtype=np.int64) % q
    else:
        # big Python ints are reduced before the cast
        arr = np.array(np.vectorize(lambda x: int(x) % q, otypes=[object])(np.array(data, dtype=object)),
                       dtype=np.int64)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    return arr


class ModVector:
    """An element of (Z/p^nZ)^r."""

    __slots__ = ("modulus", "entries")

    def __init__(self, modulus: Modulus, entries):
        self.modulus = modulus
        if len(entries) == 0:
            arr = np.zeros(0, dtype=np.int64)
        else:
            arr = _reduce_array(entries, modulus.value, 1)
        self.entries = _frozen(arr)

    @classmethod
    def zeros(cls, modulus: Modulus, r: int) -> "ModVector":
        return cls(modulus, np.zeros(r, dtype=np.int64))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return (int(x) for x in self.entries)

    def __getitem__(self, i):
        return int(self.entries[i])

    def tolist(self) -> list[int]:
        return [int(x) for x in self.entries]

    def _check(self, other: "ModVector"):
        if not isinstance(other, ModVector):
            return NotImplemented
        if other.modulus != self.modulus or len(other) != len(self):
            raise ValueError("vector modulus/length mismatch")

    def __add__(self, other):
        self._check(other)
        return ModVector(self.modulus, self.entries + other.entries)

    def __sub__(self, other):
        self._check(other)
        return ModVector(self.modulus, self.entries - other.entries)

    def __neg__(self):
        return ModVector(self.modulus, -self.entries)

    def __rmul__(self, c: int):
        return ModVector(self.modulus, (int(c) % self.modulus.value) * self.entries)

    def __eq__(self, other):
        if not isinstance(other, ModVector):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.modulus, self.entries.tobytes()))

    def is_zero(self) -> bool:
        return not self.entries.any()

    def __repr__(self):
        return f"ModVector({self.tolist()} mod {self.modulus.value})"


class ModMatrix:
    """A matrix over Z/p^nZ, stored row-major with canonical entries."""

    __slots__ = ("modulus", "entries")

    def __init__(self, modulus: Modulus, rows):
        self.modulus = modulus
        self.entries = _frozen(_reduce_array(rows, modulus.value, 2))

    @classmethod
    def identity(cls, modulus: Modulus, r: int) -> "ModMatrix":
        return cls(modulus, np.eye(r, dtype=np.int64))

    @classmethod
    def scalar(cls, modulus: Modulus, r: int, c: int) -> "ModMatrix":
        return cls(modulus, (int(c) % modulus.value) * np.eye(r, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def column(self, j: int) -> ModVector:
        return ModVector(self.modulus, self.entries[:, j])

    def lift(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.tolist())

    def transpose(self) -> "ModMatrix":
        return ModMatrix(self.modulus, self.entries.T)

    def __matmul__(self, other):
        if isinstance(other, ModVector):
            if other.modulus != self.modulus or len(other) != self.cols:
                raise ValueError("matrix/vector modulus or shape mismatch")
            return ModVector(self.modulus, self.entries @ other.entries)
        return mat_mul(self, other)

    def __add__(self, other: "ModMatrix"):
        if other.modulus != self.modulus or other.shape != self.shape:
            raise ValueError("matrix modulus/shape mismatch")
        return ModMatrix(self.modulus, self.entries + other.entries)

    def __sub__(self, other: "ModMatrix"):
        if other.modulus != self.modulus or other.shape != self.shape:
            raise ValueError("matrix modulus/shape mismatch")
        return ModMatrix(self.modulus, self.entries - other.entries)

    def __neg__(self):
        return ModMatrix(self.modulus, -self.entries)

    def __rmul__(self, c: int):
        return ModMatrix(self.modulus, (int(c) % self.modulus.value) * self.entries)

    def __pow__(self, k: int):
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        q = self.modulus.value
        result = np.eye(self.rows, dtype=np.int64)
        b = base.entries
        while k:
            if k & 1:
                result = result @ b % q
            b = b @ b % q
            k >>= 1
        return ModMatrix(self.modulus, result)

    def minus_identity(self) -> "ModMatrix":
        return self - ModMatrix.identity(self.modulus, self.rows)

    def det(self) -> int:
        """Determinant as a canonical residue."""
        return self.lift().det() % self.modulus.value

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.det() % self.modulus.p != 0

    def inverse(self) -> "ModMatrix":
        if not self.is_invertible():
            raise ValueError("matrix is not invertible")
        r = self.rows
        x, kernel = solve_matrix(self, ModMatrix.identity(self.modulus, r))
        return x

    def __eq__(self, other):
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.modulus, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"ModMatrix({self.tolist()} mod {self.modulus.value})"


def mat_mul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    if not isinstance(b, ModMatrix):
        raise TypeError("mat_mul expects two ModMatrix operands")
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    return ModMatrix(a.modulus, a.entries @ b.entries)


def block_diag(*blocks: ModMatrix) -> ModMatrix:
    modulus = blocks[0].modulus
    size = sum(b.rows for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    k = 0
    for b in blocks:
        out[k:k + b.rows, k:k + b.cols] = b.entries
        k += b.rows
    return ModMatrix(modulus, out)


# ---------------------------------------------------------------------------
# integer matrices and Smith normal form


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(k)] for i in range(k)])

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows(
            [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
             for i in range(self.rows)])

    def reduce(self, modulus: Modulus) -> ModMatrix:
        return ModMatrix(modulus, self.to_rows())

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = self.to_rows()
        k = self.rows
        if k == 0:
            return 1
        sign, prev = 1, 1
        for t in range(k - 1):
            if m[t][t] == 0:
                swap = next((i for i in range(t + 1, k) if m[i][t] != 0), None)
                if swap is None:
                    return 0
                m[t], m[swap] = m[swap], m[t]
                sign = -sign
            for i in range(t + 1, k):
                for j in range(t + 1, k):
                    m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
            prev = m[t][t]
        return sign * m[k - 1][k - 1]


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]


def smith_normal_form(a: IntMatrix, max_bits: int = 4096) -> SNFResult:
    """Smith normal form ``U @ a @ V == S`` with unimodular U and V.

    Pivot: smallest nonzero absolute value in the active block, ties to the
    lowest (row, col).  Entries whose bit length exceeds ``max_bits`` raise
    :class:`CapExceeded`.
    """
    m, n = a.rows, a.cols
    A = a.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def guard(vals):
        for x in vals:
            if x.bit_length() > max_bits:
                raise CapExceeded(f"Smith normal form entry exceeds {max_bits} bits")

    def row_sub(i, t, c):
        A[i] = [x - c * y for x, y in zip(A[i], A[t])]
        U[i] = [x - c * y for x, y in zip(U[i], U[t])]
        guard(A[i])
        guard(U[i])

    def col_sub(j, t, c):
        for row in A:
            row[j] -= c * row[t]
        for row in V:
            row[j] -= c * row[t]
        guard(row[j] for row in A)
        guard(row[j] for row in V)

    def pick(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(A[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        return best

    for t in range(min(m, n)):
        while True:
            best = pick(t)
            if best is None:
                break
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
                for row in V:
                    row[t], row[j] = row[j], row[t]
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_sub(i, t, A[i][t] // piv)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_sub(j, t, A[t][j] // piv)
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is not None:
                i = bad[0]
                A[t] = [x + y for x, y in zip(A[t], A[i])]
                U[t] = [x + y for x, y in zip(U[t], U[i])]
                continue
            if piv < 0:
                A[t] = [-x for x in A[t]]
                U[t] = [-x for x in U[t]]
            break
        if best is None:
            break

    factors = tuple(A[i][i] for i in range(min(m, n)))
    return SNFResult(IntMatrix.from_rows(U) if m else IntMatrix(0, 0, ()),
                     IntMatrix(m, n, tuple(x for r in A for x in r)),
                     IntMatrix.from_rows(V) if n else IntMatrix(0, 0, ()),
                     factors)


# ---------------------------------------------------------------------------
# elimination over the chain ring Z/p^nZ


class _Diagonal(NamedTuple):
    valuations: list[int]   # pivot p-valuations, non-decreasing
    U: np.ndarray | None    # U @ A @ V == diag(p^valuations)
    Uinv: np.ndarray | None
    V: np.ndarray | None
    Vinv: np.ndarray | None


def _diagonalize(a: np.ndarray, modulus: Modulus, left: bool = False, right: bool = True) -> _Diagonal:
    """Full-pivot diagonalization of ``a`` over Z/p^nZ.

    Pivots are taken in increasing p-valuation, each the first qualifying
    entry in row-major order of the active block, and normalized to p^e.
    """
    p, n, q = modulus.p, modulus.n, modulus.value
    A = np.array(a, dtype=np.int64) % q
    m, k = A.shape
    U = np.eye(m, dtype=np.int64) if left else None
    Uinv = np.eye(m, dtype=np.int64) if left else None
    V = np.eye(k, dtype=np.int64) if right else None
    Vinv = np.eye(k, dtype=np.int64) if right else None
    vals: list[int] = []
    t = 0
    for e in range(n):
        pe, pe1 = p**e, p**(e + 1)
        while t < min(m, k):
            block = A[t:, t:]
            hits = np.flatnonzero(block % pe1)
            if hits.size == 0:
                break
            i, j = divmod(int(hits[0]), k - t)
            i, j = i + t, j + t
            if i != t:
                A[[t, i]] = A[[i, t]]
                if left:
                    U[[t, i]] = U[[i, t]]
                    Uinv[:, [t, i]] = Uinv[:, [i, t]]
            if j != t:
                A[:, [t, j]] = A[:, [j, t]]
                if right:
                    V[:, [t, j]] = V[:, [j, t]]
                    Vinv[[t, j]] = Vinv[[j, t]]
            unit = int(A[t, t]) // pe
            inv = pow(unit, -1, q)
            A[t] = A[t] * inv % q
            if left:
                U[t] = U[t] * inv % q
                Uinv[:, t] = Uinv[:, t] * unit % q
            c = A[t + 1:, t] // pe
            if c.any():
                A[t + 1:] = (A[t + 1:] - np.outer(c, A[t])) % q
                if left:
                    U[t + 1:] = (U[t + 1:] - np.outer(c, U[t])) % q
                    Uinv[:, t] = (Uinv[:, t] + Uinv[:, t + 1:] @ c) % q
            c2 = A[t, t + 1:] // pe
            if c2.any():
                A[t, t + 1:] = 0
                if right:
                    V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], c2)) % q
                    Vinv[t] = (Vinv[t] + c2 @ Vinv[t + 1:]) % q
            vals.append(e)
            t += 1
    return _Diagonal(vals, U, Uinv, V, Vinv)


def _howell(rows: np.ndarray, modulus: Modulus) -> tuple[np.ndarray, tuple[tuple[int, int], ...]]:
    """Canonical echelon basis of the row span of ``rows``.

    Each pivot is p^e, entries above a pivot are reduced below it, and for
    every pivot row the multiple that kills the pivot is adjoined back into
    the active set (the Howell closure), which makes the form unique.
    Returns the basis rows and the (column, valuation) of each pivot.
    """
    p, n, q = modulus.p, modulus.n, modulus.value
    width = rows.shape[1]
    if width == 0:
        return np.zeros((0, 0), dtype=np.int64), ()
    A = np.array(rows, dtype=np.int64).reshape(-1, width) % q
    A = A[A.any(axis=1)]
    out: list[np.ndarray] = []
    pivots: list[tuple[int, int]] = []
    for c in range(width):
        if A.shape[0] == 0:
            break
        col = A[:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        v = _valuations(col[nz], p, n)
        i = int(nz[int(np.argmin(v))])
        e = int(v.min())
        pe = p**e
        piv = A[i] * pow(int(col[i]) // pe, -1, q) % q
        rest = np.delete(A, i, axis=0)
        if rest.shape[0]:
            rest = (rest - np.outer(rest[:, c] // pe, piv)) % q
        extra = piv * p**(n - e) % q
        if extra.any():
            rest = np.vstack([rest, extra])
        A = rest[rest.any(axis=1)] if rest.shape[0] else rest
        out.append(piv)
        pivots.append((c, e))
    for idx, (c, e) in enumerate(pivots):
        pe = p**e
        for j in range(idx):
            f = int(out[j][c]) // pe
            if f:
                out[j] = (out[j] - f * out[idx]) % q
    basis = np.array(out, dtype=np.int64).reshape(len(out), width)
    return basis, tuple(pivots)


class Submodule:
    """A subgroup of (Z/p^nZ)^r held in canonical (Howell) echelon form.

    Two submodules are equal exactly when their canonical bases are equal.
    """

    __slots__ = ("modulus", "rank", "basis", "pivots")

    def __init__(self, modulus: Modulus, rank: int, generators: Iterable = ()):
        self.modulus = modulus
        self.rank = rank
        gens = [g.entries if isinstance(g, ModVector) else np.asarray(g, dtype=np.int64)
                for g in generators]
        for g in gens:
            if g.shape != (rank,):
                raise ValueError(f"generator of length {g.shape} in a rank-{rank} module")
        rows = np.array(gens, dtype=np.int64).reshape(len(gens), rank)
        basis, pivots = _howell(rows, modulus)
        self.basis = _frozen(basis)
        self.pivots = pivots

    @classmethod
    def _from_rows(cls, modulus: Modulus, rank: int, rows: np.ndarray) -> "Submodule":
        return cls(modulus, rank, list(np.asarray(rows, dtype=np.int64).reshape(-1, rank)))

    @classmethod
    def zero(cls, modulus: Modulus, rank: int) -> "Submodule":
        return cls(modulus, rank)

    @classmethod
    def full(cls, modulus: Modulus, rank: int) -> "Submodule":
        return cls._from_rows(modulus, rank, np.eye(rank, dtype=np.int64))

    @property
    def generators(self) -> tuple[ModVector, ...]:
        return tuple(ModVector(self.modulus, row) for row in self.basis)

    def size(self) -> int:
        n = self.modulus.n
        return self.modulus.p ** sum(n - e for _, e in self.pivots)

    def index(self) -> int:
        n = self.modulus.n
        return self.modulus.p ** (n * self.rank - sum(n - e for _, e in self.pivots))

    def _vec(self, v) -> np.ndarray:
        if isinstance(v, ModVector):
            if v.modulus != self.modulus:
                raise ValueError("vector modulus differs from the submodule's")
            v = v.entries
        v = np.asarray(v, dtype=np.int64) % self.modulus.value
        if v.shape != (self.rank,):
            raise ValueError("vector length differs from the submodule rank")
        return v

    def contains(self, v) -> bool:
        q, p = self.modulus.value, self.modulus.p
        v = self._vec(v).copy()
        for row, (c, e) in zip(self.basis, self.pivots):
            pe = p**e
            if v[c] % pe:
                return False
            if v[c]:
                v = (v - (int(v[c]) // pe) * row) % q
        return not v.any()

    __contains__ = contains

    def _same_ambient(self, other: "Submodule"):
        if other.modulus != self.modulus or other.rank != self.rank:
            raise ValueError("submodules live in different ambient modules")

    def __add__(self, other: "Submodule") -> "Submodule":
        self._same_ambient(other)
        return Submodule._from_rows(self.modulus, self.rank, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Submodule") -> "Submodule":
        self._same_ambient(other)
        a, b = self.basis, other.basis
        if not len(a) or not len(b):
            return Submodule.zero(self.modulus, self.rank)
        # (x, y) with x.a == y.b, read off x.a
        stacked = np.vstack([a, -b % self.modulus.value]).T
        rel = kernel_submodule(ModMatrix(self.modulus, stacked))
        coeffs = rel.basis[:, :len(a)]
        return Submodule._from_rows(self.modulus, self.rank, coeffs @ a)

    def issubset(self, other: "Submodule") -> bool:
        self._same_ambient(other)
        return all(other.contains(row) for row in self.basis)

    __le__ = issubset

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return (self.modulus == other.modulus and self.rank == other.rank
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.modulus, self.rank, self.basis.tobytes()))

    def is_zero(self) -> bool:
        return len(self.basis) == 0

    def __repr__(self):
        return (f"Submodule(rank={self.rank}, mod {self.modulus.value}, "
                f"index={self.index()}, basis={self.basis.tolist()})")


def image_submodule(a: ModMatrix) -> Submodule:
    """Column span of ``a``."""
    return Submodule._from_rows(a.modulus, a.rows, a.entries.T)


def kernel_submodule(a: ModMatrix) -> Submodule:
    """``{x : a @ x == 0}``."""
    return _kernel(a.entries, a.modulus)


def _kernel(a: np.ndarray, modulus: Modulus) -> Submodule:
    k = a.shape[1]
    d = _diagonalize(a, modulus, left=False, right=True)
    gens = []
    for i in range(k):
        scale = modulus.p ** (modulus.n - d.valuations[i]) if i < len(d.valuations) else 1
        col = d.V[:, i] * scale % modulus.value
        if col.any():
            gens.append(col)
    return Submodule(modulus, k, gens)


def _solve(a: np.ndarray, b: np.ndarray, modulus: Modulus) -> np.ndarray | None:
    p, q = modulus.p, modulus.value
    d = _diagonalize(a, modulus, left=True, right=True)
    y = d.U @ (b % q) % q
    rank = len(d.valuations)
    if y[rank:].any():
        return None
    x = np.zeros(a.shape[1], dtype=np.int64)
    for i, e in enumerate(d.valuations):
        pe = p**e
        if y[i] % pe:
            return None
        x[i] = y[i] // pe
    return d.V @ x % q


def solve_linear(a: ModMatrix, b: ModVector) -> tuple[ModVector | None, Submodule]:
    """One solution of ``a @ x == b`` (or None) together with ``ker a``."""
    if a.modulus != b.modulus:
        raise ValueError("modulus mismatch")
    if a.rows != len(b):
        raise ValueError(f"shape mismatch: {a.shape} against right-hand side of length {len(b)}")
    x = _solve(a.entries, b.entries, a.modulus)
    return (None if x is None else ModVector(a.modulus, x)), kernel_submodule(a)


def solve_matrix(a: ModMatrix, b: ModMatrix) -> tuple[ModMatrix | None, Submodule]:
    """Column-by-column :func:`solve_linear` for ``a @ X == b``."""
    cols = []
    for j in range(b.cols):
        x = _solve(a.entries, b.entries[:, j], a.modulus)
        if x is None:
            return None, kernel_submodule(a)
        cols.append(x)
    return ModMatrix(a.modulus, np.array(cols, dtype=np.int64).reshape(b.cols, a.cols).T), kernel_submodule(a)


def contains(s: Submodule, v: ModVector) -> bool:
    return s.contains(v)


def submodule_sum(s: Submodule, t: Submodule) -> Submodule:
    return s + t


def intersect(s: Submodule, t: Submodule) -> Submodule:
    return s.intersect(t)


def index(s: Submodule) -> int:
    return s.index()


def equals(s: Submodule, t: Submodule) -> bool:
    s._same_ambient(t)
    return s == t
