"""Naive Pauli decomposition and greedy qubit-wise-commuting grouping baselines.

Pauli strings are written in Kronecker order: ``letters[0]`` acts on the most
significant qubit (``n - 1``) and ``letters[-1]`` on qubit 0, so the string
``"XZ"`` is the matrix ``np.kron(X, Z)``.

Internally a string is a pair of bitmasks ``(x, z)`` over qubits: ``X`` sets
``x``, ``Z`` sets ``z``, ``Y`` sets both, and ``Y = i X Z``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import hadamard

from .grouping import SparseMatrix

MAX_DECOMPOSE_QUBITS = 8
COEFF_TOL = 1e-12

_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True, order=True)
class PauliString:
    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - set("IXYZ"):
            raise ValueError(f"invalid Pauli string {self.letters!r}")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def x_mask(self) -> int:
        return sum(1 << (self.n - 1 - i) for i, ch in enumerate(self.letters) if ch in "XY")

    @property
    def z_mask(self) -> int:
        return sum(1 << (self.n - 1 - i) for i, ch in enumerate(self.letters) if ch in "ZY")

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    @classmethod
    def from_masks(cls, n: int, x: int, z: int) -> PauliString:
        return cls("".join(_LETTER[(x >> q) & 1, (z >> q) & 1] for q in reversed(range(n))))

    def __str__(self):
        return self.letters


@dataclass(frozen=True)
class PauliTerm:
    string: PauliString
    coeff: complex


def _popcount(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint64)
    out = np.zeros(a.shape, dtype=np.int64)
    while np.any(a):
        out += (a & np.uint64(1)).astype(np.int64)
        a = a >> np.uint64(1)
    return out


def pauli_decompose(m: SparseMatrix, max_qubits: int = MAX_DECOMPOSE_QUBITS, tol: float = COEFF_TOL) -> list[PauliTerm]:
    """Coefficients ``tr(P M) / 2**n`` of every Pauli string with magnitude above ``tol``.

    Entries are bucketed by ``x = row ^ col``; within a bucket the
    coefficients over all ``z`` patterns are one Walsh-Hadamard transform of
    the bucket's values indexed by row. Only buckets present in ``m`` are
    touched.
    """
    n = m.n
    if n > max_qubits:
        raise ValueError(f"Pauli enumeration limited to {max_qubits} qubits, got {n}")
    dim = m.dim
    if m.nnz == 0:
        return []
    xs = m.rows ^ m.cols
    uniq_x = np.unique(xs)
    f = np.zeros((len(uniq_x), dim), dtype=np.complex128)
    f[np.searchsorted(uniq_x, xs), m.rows] = m.values
    # row z of hadamard(dim) is (-1)^{popcount(z & r)} over r
    coeffs = f @ hadamard(dim).T / dim
    z = np.arange(dim)
    phase = (1j) ** (_popcount(uniq_x[:, None] & z[None, :]) % 4)
    coeffs *= phase

    terms = []
    for xi, x in enumerate(uniq_x.tolist()):
        for zi in np.flatnonzero(np.abs(coeffs[xi]) > tol).tolist():
            terms.append(PauliTerm(PauliString.from_masks(n, x, zi), complex(coeffs[xi, zi])))
    terms.sort(key=lambda t: t.string)
    return terms


def pauli_reconstruct(terms, n: int | None = None, tol: float = COEFF_TOL) -> SparseMatrix:
    """``sum_i coeff_i * P_i`` as a sparse matrix, dropping entries with magnitude ``<= tol``."""
    terms = list(terms)
    if n is None:
        if not terms:
            raise ValueError("qubit count required for an empty term list")
        n = terms[0].string.n
    if any(t.string.n != n for t in terms):
        raise ValueError("Pauli strings must all have length n")
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    col = np.arange(dim)
    for t in terms:
        x, z = t.string.x_mask, t.string.z_mask
        # P[c ^ x, c] = i^{|x & z|} (-1)^{z . c}
        sign = 1 - 2 * (_popcount(col & z) & 1)
        out[col ^ x, col] += t.coeff * (1j) ** (bin(x & z).count("1") % 4) * sign
    return SparseMatrix.from_dense(out, threshold=tol)


def naive_circuit_count(terms) -> int:
    """Distinct non-identity Pauli strings, each measured separately."""
    return len({t.string for t in terms if not t.string.is_identity})


def qwc_commutes(p: PauliString, q: PauliString) -> bool:
    """True when at every position the letters match or one of them is ``I``."""
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p.n} vs {q.n}")
    return all(a == b or a == "I" or b == "I" for a, b in zip(p.letters, q.letters))


def qwc_group(terms) -> list[list[PauliTerm]]:
    """Greedy first-fit partition of ``terms`` into qubit-wise commuting groups.

    Terms are visited in lexicographic order of their strings. A group's
    members agree on every qubit where any of them is non-identity, so the
    group is summarized by the OR of its members' masks.
    """
    terms = sorted(terms, key=lambda t: t.string)
    gx = np.zeros(0, dtype=np.int64)
    gz = np.zeros(0, dtype=np.int64)
    groups: list[list[PauliTerm]] = []
    for t in terms:
        x, z = t.string.x_mask, t.string.z_mask
        overlap = (gx | gz) & (x | z)
        ok = (((gx ^ x) | (gz ^ z)) & overlap) == 0
        hit = np.flatnonzero(ok)
        if len(hit):
            i = hit[0]
            groups[i].append(t)
            gx[i] |= x
            gz[i] |= z
        else:
            groups.append([t])
            gx = np.append(gx, x)
            gz = np.append(gz, z)
    return groups


__all__ = [
    "PauliString",
    "PauliTerm",
    "naive_circuit_count",
    "pauli_decompose",
    "pauli_reconstruct",
    "qwc_commutes",
    "qwc_group",
]
