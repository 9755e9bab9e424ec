"""Exact dense linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced mod p. A subspace of
F_p^n is stored as its reduced row echelon basis, so two subspaces are equal
iff their stored arrays are equal.
"""

from __future__ import annotations

import numpy as np

_PRIME_CACHE: dict[int, bool] = {}


def is_prime(n: int) -> bool:
    n = int(n)
    if n not in _PRIME_CACHE:
        _PRIME_CACHE[n] = n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))
    return _PRIME_CACHE[n]


def check_prime(p) -> int:
    p = int(p)
    if not is_prime(p) or p >= 1 << 16:
        raise ValueError(f"p must be a prime below 2**16, got {p}")
    return p


def residues(p: int, data) -> np.ndarray:
    return np.asarray(data, dtype=np.int64) % p


def rref(a, p: int):
    """Reduced row echelon form mod p. Returns (matrix, pivot column list)."""
    r = residues(p, a)
    if r.ndim != 2:
        raise ValueError("2-D array expected")
    r = r.copy()
    nrow, ncol = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncol):
        if row == nrow:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = (r[row] * pow(int(r[row, col]), p - 2, p)) % p
        hit = np.nonzero(r[:, col])[0]
        hit = hit[hit != row]
        if hit.size:
            r[hit] = (r[hit] - np.outer(r[hit, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def kernel_basis(a, p: int) -> np.ndarray:
    """RREF basis of {x : a @ x = 0 (mod p)}."""
    a = residues(p, a)
    ncol = a.shape[1]
    r, pivots = rref(a, p)
    pivset = set(pivots)
    free = [c for c in range(ncol) if c not in pivset]
    if not free:
        return np.zeros((0, ncol), dtype=np.int64)
    basis = np.zeros((len(free), ncol), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fc]) % p
    rb, _ = rref(basis, p)
    return rb


class FpMatrix:
    """Immutable matrix over F_p."""

    __slots__ = ("p", "a")

    def __init__(self, p, data):
        self.p = check_prime(p)
        a = residues(self.p, data)
        if a.ndim != 2:
            raise ValueError("2-D array expected")
        a.flags.writeable = False
        self.a = a

    @classmethod
    def identity(cls, p, n):
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, p, r, c):
        return cls(p, np.zeros((r, c), dtype=np.int64))

    @property
    def shape(self):
        return self.a.shape

    def __eq__(self, other):
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.p, self.a.shape, self.a.tobytes()))

    def add(self, other):
        return FpMatrix(self.p, (self.a + other.a) % self.p)

    def matmul(self, other):
        # int64 holds n * (p-1)^2 for every size used here
        return FpMatrix(self.p, (self.a @ other.a) % self.p)

    def __matmul__(self, other):
        return self.matmul(other)

    def matpow(self, e: int):
        if self.a.shape[0] != self.a.shape[1]:
            raise ValueError("square matrix expected")
        result = FpMatrix.identity(self.p, self.a.shape[0])
        base = self
        while e > 0:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def rank(self) -> int:
        return len(rref(self.a, self.p)[1])

    def kernel(self) -> "Subspace":
        return Subspace(self.p, self.a.shape[1], kernel_basis(self.a, self.p))

    def inverse(self) -> "FpMatrix":
        """Inverse mod p via row reduction of the augmented matrix."""
        n, m = self.a.shape
        if n != m:
            raise ValueError("square matrix expected")
        aug = np.concatenate([self.a, np.eye(n, dtype=np.int64)], axis=1)
        r, piv = rref(aug, self.p)
        if piv[:n] != list(range(n)):
            raise ValueError("matrix is singular mod p")
        return FpMatrix(self.p, r[:, n:])


class Subspace:
    """Subspace of F_p^ambient with a canonical RREF basis (no zero rows)."""

    __slots__ = ("p", "ambient", "basis", "pivots")

    def __init__(self, p, ambient: int, vectors=None):
        self.p = check_prime(p)
        self.ambient = int(ambient)
        if vectors is None or (hasattr(vectors, "__len__") and len(vectors) == 0):
            b = np.zeros((0, self.ambient), dtype=np.int64)
            piv: list[int] = []
        else:
            v = residues(self.p, vectors)
            if v.ndim == 1:
                v = v.reshape(1, -1)
            if v.shape[1] != self.ambient:
                raise ValueError("ambient dimension mismatch")
            b, piv = rref(v, self.p)
            b = b[: len(piv)]
        b = np.ascontiguousarray(b)
        b.flags.writeable = False
        self.basis = b
        self.pivots = tuple(piv)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def reduce(self, v) -> np.ndarray:
        """Residual of v after elimination against the basis."""
        w = residues(self.p, v)
        if w.shape != (self.ambient,):
            raise ValueError("vector of ambient length expected")
        w = w.copy()
        for i, c in enumerate(self.pivots):
            if w[c]:
                w = (w - w[c] * self.basis[i]) % self.p
        return w

    def contains_vector(self, v) -> bool:
        return not self.reduce(v).any()

    def contains(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient or self.p != other.p:
            raise ValueError("incompatible subspaces")
        return all(self.contains_vector(row) for row in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.p == other.p
            and self.ambient == other.ambient
            and self.dim == other.dim
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.p, self.ambient, self.basis.tobytes()))

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.p, self.ambient, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        # kernel of the concatenation: coefficient rows (x, y) with
        # x @ A + y @ B = 0 give intersection vectors x @ A = -(y @ B)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.p, self.ambient)
        stacked = np.vstack([self.basis, other.basis])
        coeffs = kernel_basis(stacked.T, self.p)
        if coeffs.shape[0] == 0:
            return Subspace(self.p, self.ambient)
        vecs = (coeffs[:, : self.dim] @ self.basis) % self.p
        return Subspace(self.p, self.ambient, vecs)

    def annihilator(self) -> "Subspace":
        """Functionals (as coordinate vectors) vanishing on this subspace."""
        if self.dim == 0:
            return Subspace(self.p, self.ambient, np.eye(self.ambient, dtype=np.int64))
        return Subspace(self.p, self.ambient, kernel_basis(self.basis, self.p))

    def __repr__(self):
        return f"Subspace(p={self.p}, ambient={self.ambient}, dim={self.dim})"
