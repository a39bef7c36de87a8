"""Sparse matrices, grouping of their entries by index XOR, and circuit-count analytics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import build_transform


class SparseMatrix:
    """Coordinate-format ``2**n x 2**n`` complex matrix.

    Entries whose magnitude is ``<= threshold`` are dropped at construction
    (exact zeros are always dropped). Duplicate ``(row, col)`` keys are
    rejected rather than summed.
    """

    def __init__(self, n: int, rows, cols, values, threshold: float = 0.0):
        if n < 1:
            raise ValueError(f"qubit count must be >= 1, got {n}")
        rows = np.asarray(rows, dtype=np.int64).reshape(-1)
        cols = np.asarray(cols, dtype=np.int64).reshape(-1)
        values = np.asarray(values, dtype=np.complex128).reshape(-1)
        if not (len(rows) == len(cols) == len(values)):
            raise ValueError("rows, cols and values must have equal length")
        dim = 1 << n
        if len(rows) and (rows.min() < 0 or cols.min() < 0 or rows.max() >= dim or cols.max() >= dim):
            raise ValueError(f"entry index out of range for a {dim}x{dim} matrix")
        keys = rows * dim + cols
        uniq, counts = np.unique(keys, return_counts=True)
        if len(uniq) != len(keys):
            dup = int(uniq[counts > 1][0])
            raise ValueError(f"duplicate entry at ({dup // dim}, {dup % dim})")

        keep = np.abs(values) > threshold
        order = np.argsort(keys[keep], kind="stable")
        self.n = n
        self.rows = rows[keep][order]
        self.cols = cols[keep][order]
        self.values = values[keep][order]
        for a in (self.rows, self.cols, self.values):
            a.setflags(write=False)

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def nnz(self) -> int:
        return len(self.values)

    def __len__(self):
        return self.nnz

    def __repr__(self):
        return f"SparseMatrix(n={self.n}, nnz={self.nnz})"

    def __iter__(self):
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.values.tolist()):
            yield r, c, v

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.values, other.values)
        )

    @classmethod
    def from_entries(cls, n: int, entries, threshold: float = 0.0) -> SparseMatrix:
        entries = list(entries)
        if not entries:
            return cls(n, [], [], [])
        rows, cols, values = zip(*entries)
        return cls(n, rows, cols, values, threshold=threshold)

    @classmethod
    def from_dense(cls, a, threshold: float = 0.0) -> SparseMatrix:
        a = np.asarray(a, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        n = a.shape[0].bit_length() - 1
        if a.shape[0] != 1 << n:
            raise ValueError("dimension must be a power of two")
        rows, cols = np.nonzero(np.abs(a) > threshold)
        return cls(n, rows, cols, a[rows, cols])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        out[self.rows, self.cols] = self.values
        return out

    def scaled(self, alpha: complex) -> SparseMatrix:
        return SparseMatrix(self.n, self.rows, self.cols, alpha * self.values)

    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0))

    def is_symmetric(self) -> bool:
        t = SparseMatrix(self.n, self.cols, self.rows, self.values)
        return t == self


@dataclass(frozen=True)
class EntryGroup:
    """Off-diagonal entries sharing the row/column XOR ``d``.

    Each pair is stored once, keyed by the representative index ``p`` whose
    pivot bit is 0, with ``coeff_plus = M[p, p^d] + M[p^d, p]`` and
    ``coeff_minus = M[p, p^d] - M[p^d, p]``.
    """

    d: int
    k: int
    p: np.ndarray
    coeff_plus: np.ndarray
    coeff_minus: np.ndarray

    @property
    def needs_real(self) -> bool:
        return bool(np.any(self.coeff_plus != 0))

    @property
    def needs_imag(self) -> bool:
        return bool(np.any(self.coeff_minus != 0))

    @property
    def circuit_count(self) -> int:
        return int(self.needs_real) + int(self.needs_imag)

    @property
    def pairs(self) -> list[tuple[int, complex, complex]]:
        return list(zip(self.p.tolist(), self.coeff_plus.tolist(), self.coeff_minus.tolist()))

    def __len__(self):
        return len(self.p)


@dataclass(frozen=True)
class MeasurementPlan:
    n: int
    diag_index: np.ndarray
    diag_values: np.ndarray
    groups: list[EntryGroup] = field(default_factory=list)

    @property
    def has_diagonal(self) -> bool:
        return len(self.diag_index) > 0

    @property
    def circuit_count(self) -> int:
        return int(self.has_diagonal) + sum(g.circuit_count for g in self.groups)


def _lowest_set_bit(d: np.ndarray) -> np.ndarray:
    low = d & -d
    # exact for powers of two below 2**53
    return np.log2(low).astype(np.int64)


def group_entries(m: SparseMatrix, pivot_rule=None) -> MeasurementPlan:
    """Partition the nonzeros of ``m`` into the diagonal and XOR-keyed groups.

    ``pivot_rule`` optionally maps ``d`` to the pivot bit used for that group;
    it must return a set bit of ``d``. The default is the lowest set bit.
    """
    rows, cols, vals = m.rows, m.cols, m.values
    on_diag = rows == cols
    diag_index = rows[on_diag]
    diag_values = vals[on_diag]

    r, c, v = rows[~on_diag], cols[~on_diag], vals[~on_diag]
    if len(v) == 0:
        return MeasurementPlan(m.n, diag_index, diag_values, [])

    d = r ^ c
    if pivot_rule is None:
        k = _lowest_set_bit(d)
    else:
        uniq_d = np.unique(d)
        lookup = {int(x): build_transform(m.n, int(x), pivot_rule(int(x))).pivot for x in uniq_d}
        k = np.array([lookup[x] for x in d.tolist()], dtype=np.int64)

    # r is the representative when its pivot bit is clear; then v = M[p, p^d]
    r_is_rep = ((r >> k) & 1) == 0
    p = np.where(r_is_rep, r, c)
    sign = np.where(r_is_rep, 1.0, -1.0)

    dim = m.dim
    keys = d * dim + p
    uniq, inv = np.unique(keys, return_inverse=True)
    plus = np.zeros(len(uniq), dtype=np.complex128)
    minus = np.zeros(len(uniq), dtype=np.complex128)
    np.add.at(plus, inv, v)
    np.add.at(minus, inv, sign * v)

    gd = uniq // dim
    gp = uniq % dim
    k_of_key = np.zeros(len(uniq), dtype=np.int64)
    k_of_key[inv] = k

    groups = []
    starts = np.flatnonzero(np.r_[True, gd[1:] != gd[:-1]])
    ends = np.r_[starts[1:], len(uniq)]
    for s, e in zip(starts, ends):
        groups.append(
            EntryGroup(
                d=int(gd[s]),
                k=int(k_of_key[s]),
                p=gp[s:e],
                coeff_plus=plus[s:e],
                coeff_minus=minus[s:e],
            )
        )
    return MeasurementPlan(m.n, diag_index, diag_values, groups)


def bandwidth(m: SparseMatrix) -> int:
    """Largest ``|row - col|`` over the nonzero entries; 0 if none."""
    if m.nnz == 0:
        return 0
    return int(np.max(np.abs(m.rows - m.cols)))


def circuit_count_upper_bound(n: int, w: int) -> int:
    """Worst-case distinct circuit count for bandwidth ``w`` on ``n`` qubits.

    Uses ``r = ceil(log2 w)``: ``2 * ((n - r) * w + 2**r)``, and 1 for ``w == 0``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if w < 0:
        raise ValueError(f"bandwidth must be non-negative, got {w}")
    if w >= 1 << n:
        raise ValueError(f"bandwidth {w} is degenerate for n={n} (max {(1 << n) - 1})")
    if w == 0:
        return 1
    r = (w - 1).bit_length()  # ceil(log2 w)
    return 2 * ((n - r) * w + (1 << r))


def plan_vs_bound(m: SparseMatrix) -> tuple[int, int]:
    """``(circuits needed by the grouping plan, bandwidth upper bound)``."""
    count = group_entries(m).circuit_count
    bound = circuit_count_upper_bound(m.n, bandwidth(m))
    return count, bound


__all__ = [
    "EntryGroup",
    "MeasurementPlan",
    "SparseMatrix",
    "bandwidth",
    "circuit_count_upper_bound",
    "group_entries",
    "plan_vs_bound",
]
