"""Circuit-count comparison tables over qubit counts for random matrix families."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields

import numpy as np

from .baselines import MAX_DECOMPOSE_QUBITS, naive_circuit_count, pauli_decompose, qwc_group
from .estimator import embed_matrix
from .grouping import SparseMatrix, bandwidth, circuit_count_upper_bound, group_entries

FAMILIES = ("dense-symmetric", "dense-asymmetric", "band")
MAX_SWEEP_QUBITS = 12


def random_matrix(family: str, n: int, rng: np.random.Generator, w: int | None = None) -> SparseMatrix:
    """Random real matrix with the support pattern of ``family``.

    ``band`` is symmetric with every entry within distance ``w`` of the
    diagonal filled (``w`` is clipped to ``2**n - 1``).
    """
    dim = 1 << n
    if family == "dense-symmetric":
        g = rng.normal(size=(dim, dim))
        return SparseMatrix.from_dense(g + g.T)
    if family == "dense-asymmetric":
        return SparseMatrix.from_dense(rng.normal(size=(dim, dim)))
    if family == "band":
        if w is None or w < 0:
            raise ValueError("band family needs a non-negative bandwidth")
        w = min(w, dim - 1)
        rows, cols = [], []
        for off in range(-w, w + 1):
            r = np.arange(max(0, -off), min(dim, dim - off))
            rows.append(r)
            cols.append(r + off)
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        vals = rng.normal(size=len(rows))
        upper = SparseMatrix(n, rows[rows <= cols], cols[rows <= cols], vals[rows <= cols])
        lower = upper.rows != upper.cols
        return SparseMatrix(
            n,
            np.r_[upper.rows, upper.cols[lower]],
            np.r_[upper.cols, upper.rows[lower]],
            np.r_[upper.values, upper.values[lower]],
        )
    raise ValueError(f"unknown matrix family {family!r}; choose from {', '.join(FAMILIES)}")


@dataclass
class SweepRow:
    n: int
    ppm_circuits: int
    naive_circuits: int | None
    qwc_groups: int | None
    bound: int


def sweep_row(m: SparseMatrix, two_state: bool = False) -> SweepRow:
    target = embed_matrix(m) if two_state else m
    ppm = group_entries(target).circuit_count
    naive = qwc = None
    if target.n <= MAX_DECOMPOSE_QUBITS:
        terms = pauli_decompose(target)
        measured = [t for t in terms if not t.string.is_identity]
        naive = naive_circuit_count(terms)
        qwc = len(qwc_group(measured))
    return SweepRow(m.n, ppm, naive, qwc, circuit_count_upper_bound(m.n, bandwidth(m)))


def run_sweep(
    family: str,
    n_min: int,
    n_max: int,
    w: int | None = None,
    two_state: bool = False,
    seed: int = 0,
) -> list[SweepRow]:
    """One :class:`SweepRow` per ``n`` in ``n_min..n_max``, reproducible from ``seed``."""
    if family not in FAMILIES:
        raise ValueError(f"unknown matrix family {family!r}; choose from {', '.join(FAMILIES)}")
    if not 1 <= n_min <= n_max <= MAX_SWEEP_QUBITS:
        raise ValueError(f"need 1 <= n_min <= n_max <= {MAX_SWEEP_QUBITS}")
    rows = []
    for n in range(n_min, n_max + 1):
        rng = np.random.default_rng([seed, n])
        rows.append(sweep_row(random_matrix(family, n, rng, w), two_state))
    return rows


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name for f in fields(SweepRow)])
    for row in rows:
        w.writerow(["" if v is None else v for v in astuple(row)])
    return buf.getvalue()


__all__ = ["FAMILIES", "SweepRow", "random_matrix", "rows_to_csv", "run_sweep", "sweep_row"]
