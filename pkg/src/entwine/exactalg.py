"""Exact dense linear algebra over prime fields F_p.

Every morphism handled by this package (multiplications, comultiplications,
coactions, entwining base maps, canonical Galois maps) is an :class:`FpMatrix`.
The conventions are fixed once, here, for everything downstream:

* matrices act on column vectors, so ``g @ f`` means "apply f first";
* tensor legs flatten row-major: basis vector ``(i, j)`` of ``V (x) W`` sits at
  index ``i * dim(W) + j``, and :func:`kron` follows the same rule;
* row reduction is deterministic (first nonzero pivot, rows scanned
  top-down), so kernels, inverses and quotient projections are reproducible
  byte for byte.

Only dense matrices over F_p with ``2 <= p < 2**31``; instance dimensions in
this package stay small enough that nothing smarter is warranted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

__all__ = [
    "ShapeError",
    "Fp",
    "FpMatrix",
    "identity",
    "zeros",
    "kron",
    "swap_matrix",
    "rref",
    "rank",
    "solve",
    "right_inverse",
    "left_inverse",
    "inverse",
    "kernel_basis",
    "cokernel_basis",
    "fp_inv",
    "is_prime",
]


class ShapeError(ValueError):
    """Shapes or moduli of the operands do not line up."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_modulus(p: int) -> None:
    if not isinstance(p, int) or not 2 <= p < 2**31 or not is_prime(p):
        raise ShapeError(f"modulus must be a prime in [2, 2^31), got {p!r}")


def fp_inv(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` via the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    r0, r1, s0, s1 = p, a, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % p


@dataclass(frozen=True)
class Fp:
    """A single element of F_p, always stored reduced."""

    value: int
    p: int

    def __post_init__(self) -> None:
        _check_modulus(self.p)
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _match(self, other: "Fp") -> None:
        if self.p != other.p:
            raise ShapeError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "Fp") -> "Fp":
        self._match(other)
        return Fp(self.value + other.value, self.p)

    def __sub__(self, other: "Fp") -> "Fp":
        self._match(other)
        return Fp(self.value - other.value, self.p)

    def __mul__(self, other: "Fp") -> "Fp":
        self._match(other)
        return Fp(self.value * other.value, self.p)

    def __neg__(self) -> "Fp":
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        return Fp(fp_inv(self.value, self.p), self.p)


class FpMatrix:
    """Immutable dense matrix over F_p.

    Entries are stored as a read-only int64 numpy array, reduced mod p at
    construction.  All arithmetic stays exact; int64 cannot overflow at the
    dimensions this package handles (products of entries < 2^62).
    """

    __slots__ = ("p", "a")

    def __init__(self, p: int, entries) -> None:
        _check_modulus(p)
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeError(f"expected a 2-d array of entries, got ndim={a.ndim}")
        a = np.mod(a, p)
        a.setflags(write=False)
        self.p = p
        self.a = a

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_flat(cls, p: int, rows: int, cols: int, entries) -> "FpMatrix":
        a = np.array(list(entries), dtype=np.int64)
        if a.size != rows * cols:
            raise ShapeError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {a.size}"
            )
        return cls(p, a.reshape(rows, cols))

    @classmethod
    def column(cls, p: int, entries) -> "FpMatrix":
        return cls(p, np.array(list(entries), dtype=np.int64).reshape(-1, 1))

    @classmethod
    def row(cls, p: int, entries) -> "FpMatrix":
        return cls(p, np.array(list(entries), dtype=np.int64).reshape(1, -1))

    # -- basic queries ---------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple:
        return self.a.shape

    def entry(self, i: int, j: int) -> int:
        return int(self.a[i, j])

    def entries_rowmajor(self) -> list:
        return [int(x) for x in self.a.reshape(-1)]

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(
            np.array_equal(self.a, np.eye(self.rows, dtype=np.int64))
        )

    def is_zero(self) -> bool:
        return not self.a.any()

    # -- arithmetic ------------------------------------------------------------

    def _match(self, other: "FpMatrix") -> None:
        if not isinstance(other, FpMatrix):
            raise TypeError(f"expected FpMatrix, got {type(other).__name__}")
        if self.p != other.p:
            raise ShapeError(f"modulus mismatch: {self.p} vs {other.p}")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._match(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        # Entries are reduced, so every dot product is bounded by k*(p-1)^2.
        # Below 2^53 the float64 path is exact and uses BLAS; below 2^63 the
        # int64 path is exact; otherwise fall back to arbitrary precision.
        bound = self.cols * (self.p - 1) ** 2
        if bound < 2**53:
            prod = (self.a.astype(np.float64) @ other.a.astype(np.float64)).astype(np.int64)
        elif bound < 2**63:
            prod = self.a @ other.a
        else:
            prod = self.a.astype(object) @ other.a.astype(object)
        return FpMatrix(self.p, prod)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._match(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FpMatrix(self.p, self.a + other.a)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._match(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FpMatrix(self.p, self.a - other.a)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self.a)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self.a * (c % self.p))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.a.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (
            self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.a.tolist()!r})"


def identity(p: int, n: int) -> FpMatrix:
    return FpMatrix(p, np.eye(n, dtype=np.int64))


def zeros(p: int, rows: int, cols: int) -> FpMatrix:
    return FpMatrix(p, np.zeros((rows, cols), dtype=np.int64))


def kron(m: FpMatrix, n: FpMatrix) -> FpMatrix:
    """Kronecker product, realizing the tensor product on morphisms.

    Entry at ``(i*n.rows + k, j*n.cols + l)`` is ``m[i,j] * n[k,l]`` (row-major
    block convention, bit-exact contract).
    """
    m._match(n)
    return FpMatrix(m.p, np.kron(m.a, n.a))


def swap_matrix(p: int, d1: int, d2: int) -> FpMatrix:
    """Permutation matrix for the transposition V1 (x) V2 -> V2 (x) V1."""
    s = np.zeros((d1 * d2, d1 * d2), dtype=np.int64)
    for i in range(d1):
        for j in range(d2):
            s[j * d1 + i, i * d2 + j] = 1
    return FpMatrix(p, s)


def rref(m: FpMatrix) -> tuple:
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` with pivots as a tuple of column indices.
    Deterministic: columns scanned left to right, the first nonzero entry at
    or below the current row becomes the pivot.
    """
    a = np.array(m.a, dtype=np.int64)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if a[i, c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * fp_inv(int(a[r, c]), m.p)) % m.p
        for i in range(nrows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % m.p
        pivots.append(c)
        r += 1
    return FpMatrix(m.p, a), len(pivots), tuple(pivots)


def rank(m: FpMatrix) -> int:
    return rref(m)[1]


def solve(m: FpMatrix, b: FpMatrix) -> Optional[FpMatrix]:
    """Particular solution X of ``m @ X == b`` (free variables set to zero).

    Returns None when the system is inconsistent.
    """
    m._match(b)
    if m.rows != b.rows:
        raise ShapeError(f"row mismatch: {m.rows} vs {b.rows}")
    aug = FpMatrix(m.p, np.hstack([m.a, b.a]))
    red, _, pivots = rref(aug)
    if any(c >= m.cols for c in pivots):
        return None
    x = np.zeros((m.cols, b.cols), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc, :] = red.a[i, m.cols:]
    return FpMatrix(m.p, x)


def right_inverse(m: FpMatrix) -> Optional[FpMatrix]:
    """N with ``m @ N == I`` when one exists, else None.

    Absence is a value, not an error: it doubles as the split-epimorphism
    test.  For square full-rank m this is the two-sided inverse.
    """
    return solve(m, identity(m.p, m.rows))


def left_inverse(m: FpMatrix) -> Optional[FpMatrix]:
    """N with ``N @ m == I`` when one exists; the split-monomorphism witness."""
    ri = right_inverse(m.transpose())
    return None if ri is None else ri.transpose()


def inverse(m: FpMatrix) -> Optional[FpMatrix]:
    """Two-sided inverse of a square matrix, or None."""
    if m.rows != m.cols:
        return None
    return right_inverse(m)


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Basis of ``{v : m v = 0}``, returned as the columns of one matrix.

    Columns are ordered by free-column index, so the result is deterministic
    and directly usable as an inclusion matrix.
    """
    red, _, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((m.cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-int(red.a[i, fc])) % m.p
    return FpMatrix(m.p, basis)


def cokernel_basis(m: FpMatrix) -> FpMatrix:
    """Projection of the target onto ``target / im(m)``.

    The rows express the quotient in the coordinates of the non-pivot
    positions of a row-reduced basis of the image; ``P @ m == 0`` and P has
    full row rank ``rows - rank(m)``.
    """
    red, _, pivots = rref(m.transpose())
    n = m.rows
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    proj = np.zeros((len(free), n), dtype=np.int64)
    for j, fc in enumerate(free):
        proj[j, fc] = 1
        for i, pc in enumerate(pivots):
            proj[j, pc] = (-int(red.a[i, fc])) % m.p
    return FpMatrix(m.p, proj)
