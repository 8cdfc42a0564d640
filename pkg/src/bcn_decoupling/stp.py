"""Semi-tensor product algebra over logical and Boolean matrices.

Logical matrices are kept in compressed form: one 1-based row index per
column, written ``delta_m[i_1 ... i_n]``.  Boolean and integer matrices are
plain numpy integer arrays.  Nothing here uses floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "DeltaVector",
    "LogicalMatrix",
    "identity",
    "stp",
    "stp_chain",
    "kron",
    "khatri_rao",
    "khatri_rao_chain",
    "swap_matrix",
    "power_reducing_matrix",
    "sgn_matrix",
    "hadamard",
    "as_boolean",
    "vset",
]


@dataclass(frozen=True)
class DeltaVector:
    """Canonical basis vector ``delta_dim^index`` (1-based)."""

    dim: int
    index: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if not 1 <= self.index <= self.dim:
            raise ValueError(f"index {self.index} outside [1, {self.dim}]")

    def dense(self) -> np.ndarray:
        v = np.zeros((self.dim, 1), dtype=np.int64)
        v[self.index - 1, 0] = 1
        return v

    def as_matrix(self) -> "LogicalMatrix":
        return LogicalMatrix(self.dim, [self.index])

    def kron(self, other: "DeltaVector") -> "DeltaVector":
        return DeltaVector(self.dim * other.dim, (self.index - 1) * other.dim + other.index)

    def __str__(self):
        return f"delta_{self.dim}^{self.index}"


class LogicalMatrix:
    """A matrix in L_{rows x cols}, stored as 1-based column indices."""

    __slots__ = ("rows", "idx")

    def __init__(self, rows: int, col_indices: Iterable[int]):
        idx = np.array(list(col_indices) if not isinstance(col_indices, np.ndarray) else col_indices,
                       dtype=np.int64).reshape(-1)
        if rows < 1:
            raise ValueError(f"row count must be positive, got {rows}")
        if idx.size == 0:
            raise ValueError("a logical matrix needs at least one column")
        if idx.min() < 1 or idx.max() > rows:
            raise ValueError(f"column indices must lie in [1, {rows}]")
        idx.setflags(write=False)
        object.__setattr__(self, "rows", int(rows))
        object.__setattr__(self, "idx", idx)

    def __setattr__(self, name, value):
        raise AttributeError("LogicalMatrix is immutable")

    @property
    def cols(self) -> int:
        return int(self.idx.size)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @classmethod
    def from_dense(cls, M) -> "LogicalMatrix":
        M = np.asarray(M)
        if M.ndim != 2:
            raise ValueError("expected a 2-D array")
        ok = np.isin(M, (0, 1)).all() and (M.sum(axis=0) == 1).all()
        if not ok:
            raise ValueError("matrix is not logical (need exactly one 1 per column)")
        return cls(M.shape[0], np.argmax(M, axis=0) + 1)

    def dense(self) -> np.ndarray:
        M = np.zeros(self.shape, dtype=np.int64)
        M[self.idx - 1, np.arange(self.cols)] = 1
        return M

    def column(self, j: int) -> DeltaVector:
        """``Col_j`` as a basis vector (1-based ``j``)."""
        return DeltaVector(self.rows, int(self.idx[j - 1]))

    def __call__(self, *vectors: DeltaVector) -> DeltaVector:
        """Apply ``M x_1 ... x_k`` for basis vectors whose product spans the columns."""
        col = 1
        for v in vectors:
            col = (col - 1) * v.dim + v.index
        if math.prod(v.dim for v in vectors) != self.cols:
            raise ValueError("argument dimensions do not match the column count")
        return self.column(col)

    def to_list(self) -> list[int]:
        return [int(i) for i in self.idx]

    def is_permutation(self) -> bool:
        return self.rows == self.cols and np.unique(self.idx).size == self.cols

    def transpose(self) -> "LogicalMatrix":
        """Transpose of a permutation matrix (its inverse)."""
        if not self.is_permutation():
            raise ValueError("only a permutation matrix has a logical transpose")
        inv = np.empty_like(self.idx)
        inv[self.idx - 1] = np.arange(1, self.cols + 1)
        return LogicalMatrix(self.rows, inv)

    @property
    def T(self) -> "LogicalMatrix":
        return self.transpose()

    def row_counts(self) -> np.ndarray:
        """``M 1_cols``: how many columns hit each row."""
        return np.bincount(self.idx - 1, minlength=self.rows).astype(np.int64)

    def block(self, alpha: int, width: int) -> "LogicalMatrix":
        """Columns of ``M delta^alpha`` when the trailing factor has dimension ``width``."""
        return LogicalMatrix(self.rows, self.idx[(alpha - 1) * width: alpha * width])

    def __eq__(self, other):
        if not isinstance(other, LogicalMatrix):
            return NotImplemented
        return self.rows == other.rows and np.array_equal(self.idx, other.idx)

    def __hash__(self):
        return hash((self.rows, self.idx.tobytes()))

    def __matmul__(self, other):
        return stp(self, other)

    def __repr__(self):
        body = " ".join(str(i) for i in self.idx)
        return f"delta_{self.rows}[{body}]"

    __str__ = __repr__


Matrixish = Union[LogicalMatrix, DeltaVector, np.ndarray]


def identity(n: int) -> LogicalMatrix:
    return LogicalMatrix(n, np.arange(1, n + 1))


def _dense_stp(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n, p = A.shape[1], B.shape[0]
    t = math.lcm(n, p)
    left = np.kron(A, np.eye(t // n, dtype=np.int64))
    right = np.kron(B, np.eye(t // p, dtype=np.int64))
    return left @ right


def _logical_stp(A: LogicalMatrix, B: LogicalMatrix) -> LogicalMatrix:
    n, p = A.cols, B.rows
    t = math.lcm(n, p)
    s, r = t // n, t // p
    # column d of B (x) I_r lands on row (b[d // r] - 1) * r + d % r
    d = np.arange(B.cols * r)
    mid = (B.idx[d // r] - 1) * r + d % r
    # column c of A (x) I_s lands on row (a[c // s] - 1) * s + c % s
    out = (A.idx[mid // s] - 1) * s + mid % s + 1
    return LogicalMatrix(A.rows * s, out)


def stp(A: Matrixish, B: Matrixish):
    """Semi-tensor product ``A |x B = (A (x) I_{t/n}) (B (x) I_{t/p})``.

    Two logical operands stay in the compressed index domain.  Any other
    combination is evaluated densely in exact integer arithmetic.  When the
    right operand is a basis vector and the product has one column, the
    result is returned as a :class:`DeltaVector`.
    """
    vec_out = isinstance(B, DeltaVector)
    a = A.as_matrix() if isinstance(A, DeltaVector) else A
    b = B.as_matrix() if isinstance(B, DeltaVector) else B
    if isinstance(a, LogicalMatrix) and isinstance(b, LogicalMatrix):
        out = _logical_stp(a, b)
        if vec_out and out.cols == 1:
            return out.column(1)
        return out
    da = a.dense() if isinstance(a, LogicalMatrix) else np.asarray(a)
    db = b.dense() if isinstance(b, LogicalMatrix) else np.asarray(b)
    if da.ndim == 1:
        da = da.reshape(-1, 1)
    if db.ndim == 1:
        db = db.reshape(-1, 1)
    if not (np.issubdtype(da.dtype, np.integer) or da.dtype == bool) or \
            not (np.issubdtype(db.dtype, np.integer) or db.dtype == bool):
        raise TypeError("only integer or Boolean matrices are supported")
    return _dense_stp(da.astype(np.int64), db.astype(np.int64))


def stp_chain(*factors: Matrixish):
    out = factors[0]
    for f in factors[1:]:
        out = stp(out, f)
    return out


def kron(A: LogicalMatrix, B: LogicalMatrix) -> LogicalMatrix:
    """Kronecker product of two logical matrices."""
    a = np.repeat(A.idx, B.cols)
    b = np.tile(B.idx, A.cols)
    return LogicalMatrix(A.rows * B.rows, (a - 1) * B.rows + b)


def khatri_rao(A: LogicalMatrix, B: LogicalMatrix) -> LogicalMatrix:
    """Column-wise Kronecker product ``A * B``."""
    if A.cols != B.cols:
        raise ValueError(f"column counts differ: {A.cols} vs {B.cols}")
    return LogicalMatrix(A.rows * B.rows, (A.idx - 1) * B.rows + B.idx)


def khatri_rao_chain(mats: Sequence[LogicalMatrix]) -> LogicalMatrix:
    if not mats:
        raise ValueError("need at least one matrix")
    out = mats[0]
    for M in mats[1:]:
        out = khatri_rao(out, M)
    return out


def swap_matrix(n: int, m: int) -> LogicalMatrix:
    """``W_[n,m]``, satisfying ``W (a (x) b) = b (x) a`` for a in Delta_n, b in Delta_m."""
    if n < 1 or m < 1:
        raise ValueError("swap matrix dimensions must be positive")
    c = np.arange(n * m)
    a, b = c // m, c % m
    return LogicalMatrix(n * m, b * n + a + 1)


def power_reducing_matrix(N: int) -> LogicalMatrix:
    """``Phi_N`` with ``Col_i = delta_N^i (x) delta_N^i``."""
    i = np.arange(N)
    return LogicalMatrix(N * N, i * N + i + 1)


def sgn_matrix(M) -> np.ndarray:
    if isinstance(M, LogicalMatrix):
        return M.dense().astype(np.uint8)
    return (np.asarray(M) != 0).astype(np.uint8)


def as_boolean(M) -> np.ndarray:
    """Validate and convert to a 0/1 ``uint8`` array."""
    if isinstance(M, LogicalMatrix):
        return M.dense().astype(np.uint8)
    arr = np.asarray(M)
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("Boolean matrix entries must be 0 or 1")
    return arr.astype(np.uint8)


def hadamard(mats: Sequence) -> np.ndarray:
    if len(mats) == 0:
        raise ValueError("Hadamard product of an empty list")
    out = as_boolean(mats[0]).copy()
    for M in mats[1:]:
        M = as_boolean(M)
        if M.shape != out.shape:
            raise ValueError(f"shape mismatch: {out.shape} vs {M.shape}")
        out &= M
    return out


def vset(members: Iterable, dim: int | None = None) -> np.ndarray:
    """``V(Omega)``: sum of the members' dense forms.

    ``members`` holds :class:`DeltaVector` values, or 1-based indices when
    ``dim`` is given.
    """
    members = list(members)
    dims = {v.dim for v in members if isinstance(v, DeltaVector)}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise ValueError(f"mixed dimensions in set: {sorted(dims)}")
    if not dims:
        raise ValueError("cannot infer the dimension of an empty set; pass dim")
    N = dims.pop()
    out = np.zeros(N, dtype=np.int64)
    seen = set()
    for v in members:
        k = v.index if isinstance(v, DeltaVector) else int(v)
        if not 1 <= k <= N:
            raise ValueError(f"index {k} outside [1, {N}]")
        if k in seen:
            raise ValueError(f"duplicate member delta_{N}^{k}")
        seen.add(k)
        out[k - 1] += 1
    return out
