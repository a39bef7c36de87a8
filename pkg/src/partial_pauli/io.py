"""Matrix and state file formats.

Matrices are MatrixMarket coordinate files (real, integer or complex; any
symmetry). State vectors are text files with one ``index,re,im`` line per
amplitude covering every index ``0 .. 2**n - 1``.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .grouping import SparseMatrix
from .sim import StateVector


def _qubits_for_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or dim != 1 << n:
        raise ValueError(f"dimension must be a power of two (>= 2), got {dim}")
    return n


def load_matrix(path, threshold: float = 0.0) -> SparseMatrix:
    """Read a MatrixMarket coordinate file; file indices are 1-based."""
    path = Path(path)
    info = scipy.io.mminfo(path)
    rows, cols, _, fmt = info[:4]
    if fmt != "coordinate":
        raise ValueError(f"{path}: expected coordinate format, got {fmt!r}")
    if rows != cols:
        raise ValueError(f"{path}: matrix must be square, got {rows}x{cols}")
    n = _qubits_for_dim(rows)
    coo = scipy.io.mmread(path)
    if not scipy.sparse.issparse(coo):
        raise ValueError(f"{path}: could not read coordinate data")
    coo = scipy.sparse.coo_matrix(coo)
    return SparseMatrix(n, coo.row, coo.col, coo.data, threshold=threshold)


def write_matrix(path, m: SparseMatrix) -> None:
    coo = scipy.sparse.coo_matrix(
        (m.values if not m.is_real() else m.values.real, (m.rows, m.cols)), shape=(m.dim, m.dim)
    )
    scipy.io.mmwrite(Path(path), coo)


def load_state(path) -> StateVector:
    """Read an ``index,re,im`` amplitude file and validate completeness and norm."""
    path = Path(path)
    amps = {}
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'index,re,im'")
            try:
                idx = int(row[0])
                val = complex(float(row[1]), float(row[2]))
            except ValueError:
                if lineno == 1:
                    continue  # header line
                raise ValueError(f"{path}:{lineno}: cannot parse {row!r}") from None
            if idx in amps:
                raise ValueError(f"{path}:{lineno}: duplicate index {idx}")
            amps[idx] = val
    n = _qubits_for_dim(len(amps))
    if sorted(amps) != list(range(1 << n)):
        raise ValueError(f"{path}: indices must cover 0..{(1 << n) - 1} exactly")
    return StateVector(n, np.array([amps[i] for i in range(1 << n)]))


def write_state(path, state: StateVector) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        for i, a in enumerate(state.amplitudes.tolist()):
            w.writerow([i, repr(a.real), repr(a.imag)])


__all__ = ["load_matrix", "load_state", "write_matrix", "write_state"]
