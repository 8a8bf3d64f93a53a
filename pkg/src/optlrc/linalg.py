"""Dense exact linear algebra over GF(q)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import GF


@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix over a finite field; entries are canonical element integers."""

    field: GF
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError(f"matrix entries must lie in [0, {self.field.q})")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, field: GF, rows: Iterable[Sequence[int]], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(field, np.zeros((0, cols or 0), dtype=np.int64))
        return cls(field, np.array(rows, dtype=np.int64))

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.data.T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.data.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def columns(self, idx) -> "Matrix":
        return Matrix(self.field, self.data[:, list(idx)])

    def matmul(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, matmul(self.field, self.data, other.data))

    def apply(self, vec) -> np.ndarray:
        """Return ``M @ vec`` for a vector (or stack of column vectors)."""
        v = np.asarray(vec, dtype=np.int64)
        if v.ndim == 1:
            return matmul(self.field, self.data, v[:, None])[:, 0]
        return matmul(self.field, self.data, v)


def matmul(f: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Field matrix product of two 2-D int arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if f.m == 1:
        # exact integer products stay far below 2**63 for q <= 2**16 and modest sizes
        if f.p ** 2 * max(a.shape[1], 1) < 2**62:
            return (a @ b) % f.p
    prods = f.mul(a[:, :, None], b[None, :, :])
    return f.sum(prods, axis=1)


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  ``M`` is not modified."""
    f = M.field
    A = M.data.copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = A[r, c]
        if lead != 1:
            A[r] = f.mul(A[r], f.inv(int(lead)))
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            A[hit] = f.sub(A[hit], f.mul(factors[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return Matrix(f, A), pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def right_kernel(M: Matrix) -> list[np.ndarray]:
    """Basis of {x : Mx = 0}; one vector per free column, ascending."""
    f = M.field
    R, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = np.zeros(M.cols, dtype=np.int64)
        x[fc] = 1
        for row, pc in enumerate(pivots):
            x[pc] = f.neg(int(R.data[row, fc]))
        basis.append(x)
    return basis


def kernel_matrix(M: Matrix) -> Matrix:
    """The right kernel basis stacked as rows."""
    basis = right_kernel(M)
    if not basis:
        return Matrix.zeros(M.field, 0, M.cols)
    return Matrix(M.field, np.array(basis))


def in_span(f: GF, v, S: Sequence) -> bool:
    """True iff ``v`` lies in the span of the vectors ``S``."""
    v = np.asarray(v, dtype=np.int64)
    S = [np.asarray(s, dtype=np.int64) for s in S]
    if any(s.shape != v.shape for s in S):
        raise ValueError("dimension mismatch between v and spanning vectors")
    if not S:
        return not v.any()
    base = Matrix(f, np.array(S))
    return rank(base) == rank(Matrix(f, np.vstack([base.data, v])))


def solve(M: Matrix, b) -> np.ndarray | None:
    """One solution x of Mx = b (free variables set to 0), or None."""
    f = M.field
    b = np.asarray(b, dtype=np.int64)
    aug = Matrix(f, np.hstack([M.data, b[:, None]]))
    R, pivots = rref(aug)
    if pivots and pivots[-1] == M.cols:
        return None
    x = np.zeros(M.cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = R.data[row, -1]
    return x
