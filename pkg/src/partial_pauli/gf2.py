"""Bit-level GF(2) helpers and the CNOT-realizable transforms used for grouping.

Computational basis indices are plain integers. Bit ``i`` of an index is the
state of qubit ``i``; bit 0 is the least significant.

A transform for a nonzero difference ``d`` is the identity matrix with its
pivot column replaced by ``d``. It maps every index pair ``(x, x ^ d)`` onto a
pair that differs only in the pivot bit, and it is its own inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


def _check_index(x: int, n: int | None, name: str) -> None:
    if x < 0:
        raise ValueError(f"{name} must be non-negative, got {x}")
    if n is not None and x >> n:
        raise ValueError(f"{name}={x} does not fit in {n} bits")


def xor_diff(r: int, c: int, n: int | None = None) -> int:
    """Return ``r ^ c``; zero exactly when ``r == c``.

    If ``n`` is given both operands must fit in ``n`` bits.
    """
    _check_index(r, n, "r")
    _check_index(c, n, "c")
    return r ^ c


def pivot_bit(d: int) -> int:
    """Index of the least-significant set bit of ``d``."""
    if d <= 0:
        raise ValueError("d must be positive; d == 0 is a diagonal pair with no transform")
    return (d & -d).bit_length() - 1


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Gf2Transform:
    """Self-inverse linear map ``x -> x ^ x_k * (d ^ e_k)`` over GF(2)^n.

    Attributes:
        n: number of bits (qubits).
        d: the index difference this transform serves, ``0 < d < 2**n``.
        pivot: bit ``k`` with ``d`` set at ``k``; images of a served pair
            differ only at this bit.
    """

    n: int
    d: int
    pivot: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 < self.d < (1 << self.n):
            raise ValueError(f"d must satisfy 0 < d < 2**n, got d={self.d}, n={self.n}")
        if not 0 <= self.pivot < self.n or not (self.d >> self.pivot) & 1:
            raise ValueError(f"pivot {self.pivot} is not a set bit of d={self.d:#b}")

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """Row bitmasks: bit ``j`` of ``rows[i]`` is matrix entry ``T[i, j]``."""
        k = self.pivot
        out = []
        for i in range(self.n):
            mask = 1 << i
            if i != k and (self.d >> i) & 1:
                mask |= 1 << k
            out.append(mask)
        return tuple(out)

    @property
    def matrix(self) -> np.ndarray:
        """Dense ``n x n`` 0/1 matrix, row ``i`` column ``j`` = ``T[i, j]``."""
        m = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, mask in enumerate(self.rows):
            for j in range(self.n):
                m[i, j] = (mask >> j) & 1
        return m

    def apply(self, x: int) -> int:
        """GF(2) matrix-vector product ``T @ x``."""
        _check_index(x, self.n, "x")
        y = 0
        for i, mask in enumerate(self.rows):
            y |= (popcount(mask & x) & 1) << i
        return y

    def apply_indices(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`apply` for an integer array of indices."""
        xs = np.asarray(xs, dtype=np.int64)
        flip = self.d ^ (1 << self.pivot)
        return xs ^ (((xs >> self.pivot) & 1) * flip)

    def fixes(self, x: int) -> bool:
        """True when ``T x == x``: the pivot bit of ``x`` is clear, or ``T`` is the identity."""
        return not (x >> self.pivot) & 1 or self.d == 1 << self.pivot


def build_transform(n: int, d: int, pivot: int | None = None) -> Gf2Transform:
    """Transform sending each pair ``(x, x ^ d)`` to a pair differing only at the pivot.

    ``pivot`` defaults to the lowest set bit of ``d``; any other set bit of
    ``d`` is accepted.
    """
    if d <= 0 or d >> n:
        raise ValueError(f"d must satisfy 0 < d < 2**n, got d={d}, n={n}")
    k = pivot_bit(d) if pivot is None else pivot
    return Gf2Transform(n=n, d=d, pivot=k)


def image_pair(t: Gf2Transform, r: int, c: int) -> tuple[int, int]:
    """Images ``(T r, T c)`` of a pair with ``r ^ c == t.d``.

    The images differ exactly in bit ``t.pivot``.
    """
    if r ^ c != t.d:
        raise ValueError(f"r ^ c = {r ^ c:#b} does not match transform d = {t.d:#b}")
    return t.apply(r), t.apply(c)


__all__ = [
    "Gf2Transform",
    "build_transform",
    "image_pair",
    "pivot_bit",
    "popcount",
    "xor_diff",
]
