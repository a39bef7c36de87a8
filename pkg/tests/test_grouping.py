import itertools

import numpy as np
import pytest

from conftest import random_dense, random_sparse
from partial_pauli.grouping import (
    SparseMatrix,
    bandwidth,
    circuit_count_upper_bound,
    group_entries,
    plan_vs_bound,
)


def tridiagonal(n, rng=None, symmetric=True):
    dim = 1 << n
    a = np.zeros((dim, dim))
    vals = np.arange(1, dim) if rng is None else rng.normal(size=dim - 1)
    for i in range(dim - 1):
        a[i, i + 1] = vals[i]
        a[i + 1, i] = vals[i] if symmetric else -vals[i] + 0.5
    a[np.arange(dim), np.arange(dim)] = 2.0
    return a


def brute_force_d_values(a):
    return sorted({r ^ c for r, c in zip(*np.nonzero(a)) if r != c})


def test_sparse_matrix_validation():
    with pytest.raises(ValueError, match="out of range"):
        SparseMatrix(1, [0], [2], [1.0])
    with pytest.raises(ValueError, match="duplicate"):
        SparseMatrix(1, [0, 0], [1, 1], [1.0, 2.0])
    m = SparseMatrix(2, [0, 1, 2], [1, 1, 3], [0.0, 1e-14, 3.0], threshold=1e-12)
    assert list(m) == [(2, 3, 3 + 0j)]
    assert SparseMatrix(2, [0], [1], [0.0]).nnz == 0


def test_sparse_matrix_dense_roundtrip(rng):
    a = random_sparse("complex_general", 3, rng)
    assert np.array_equal(SparseMatrix.from_dense(a).to_dense(), a)
    with pytest.raises(ValueError, match="power of two"):
        SparseMatrix.from_dense(np.eye(3))


def test_group_entries_tridiagonal_n2():
    plan = group_entries(SparseMatrix.from_dense(tridiagonal(2)))
    assert plan.has_diagonal
    assert [g.d for g in plan.groups] == [1, 3]
    assert plan.groups[0].p.tolist() == [0, 2]
    # pair (1, 2) has pivot 0; the representative is the member with bit 0 clear
    assert plan.groups[1].p.tolist() == [2]
    assert plan.groups[1].k == 0
    assert plan.circuit_count == 3


def test_group_entries_coefficients():
    a = np.zeros((4, 4), dtype=complex)
    a[1, 2] = 3 + 1j
    a[2, 1] = 5
    plan = group_entries(SparseMatrix.from_dense(a))
    (g,) = plan.groups
    # d = 3, pivot 0, representative has bit 0 clear -> p = 2, partner 1
    assert (g.d, g.k, g.p.tolist()) == (3, 0, [2])
    assert g.coeff_plus[0] == a[2, 1] + a[1, 2]
    assert g.coeff_minus[0] == a[2, 1] - a[1, 2]
    assert not plan.has_diagonal and plan.circuit_count == 2


def test_diagonal_only():
    plan = group_entries(SparseMatrix.from_dense(np.diag([1.0, 2.0, 3.0, 4.0])))
    assert plan.groups == [] and plan.circuit_count == 1


def test_empty_matrix():
    plan = group_entries(SparseMatrix(2, [], [], []))
    assert plan.circuit_count == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_dense_counts(n, rng):
    sym = group_entries(SparseMatrix.from_dense(random_dense("real_symmetric", n, rng)))
    gen = group_entries(SparseMatrix.from_dense(random_dense("complex_general", n, rng)))
    assert len(sym.groups) == len(gen.groups) == (1 << n) - 1
    assert sym.circuit_count == 1 << n
    assert gen.circuit_count == 2 * ((1 << n) - 1) + 1
    assert all(len(g) == 1 << (n - 1) for g in gen.groups)


@pytest.mark.parametrize("kind", ["real_symmetric", "real_general", "complex_hermitian", "complex_general"])
def test_partition_property(kind, rng):
    n = 4
    a = random_sparse(kind, n, rng)
    plan = group_entries(SparseMatrix.from_dense(a))
    rebuilt = np.zeros_like(a, dtype=complex)
    rebuilt[plan.diag_index, plan.diag_index] = plan.diag_values
    seen = set()
    for g in plan.groups:
        assert g.d not in seen
        seen.add(g.d)
        assert np.all((g.p >> g.k) & 1 == 0)
        q = g.p ^ g.d
        upper = (g.coeff_plus + g.coeff_minus) / 2
        lower = (g.coeff_plus - g.coeff_minus) / 2
        assert np.all(rebuilt[g.p, q] == 0) and np.all(rebuilt[q, g.p] == 0)
        rebuilt[g.p, q] = upper
        rebuilt[q, g.p] = lower
    np.testing.assert_allclose(rebuilt, a, atol=1e-15)
    assert brute_force_d_values(a) == sorted(seen)


def test_symmetry_flags(rng):
    sym = group_entries(SparseMatrix.from_dense(random_sparse("real_symmetric", 4, rng)))
    assert all(g.needs_real and not g.needs_imag for g in sym.groups)
    g = rng.normal(size=(16, 16))
    anti = group_entries(SparseMatrix.from_dense(g - g.T))
    assert all(g.needs_imag and not g.needs_real for g in anti.groups)


def test_pivot_rule_highest_bit(rng):
    a = random_dense("complex_general", 3, rng)
    plan = group_entries(SparseMatrix.from_dense(a), pivot_rule=lambda d: d.bit_length() - 1)
    for g in plan.groups:
        assert g.k == g.d.bit_length() - 1
        assert np.all((g.p >> g.k) & 1 == 0)


@pytest.mark.parametrize(
    "a,w",
    [
        (tridiagonal(3), 1),
        (np.diag([1.0, 2.0]), 0),
        (np.zeros((4, 4)), 0),
    ],
)
def test_bandwidth(a, w):
    assert bandwidth(SparseMatrix.from_dense(a)) == w


def test_bandwidth_corner():
    n = 3
    assert bandwidth(SparseMatrix(n, [0], [(1 << n) - 1], [1.0])) == (1 << n) - 1


def bound_oracle(n, w):
    if w == 0:
        return 1
    r = next(r for r in itertools.count() if 2**r >= w)
    return 2 * ((n - r) * w + 2**r)


@pytest.mark.parametrize("n,w,expected", [(3, 0, 1), (7, 0, 1), (3, 1, 8), (4, 2, 16), (4, 15, 32)])
def test_upper_bound_values(n, w, expected):
    assert circuit_count_upper_bound(n, w) == expected


def test_upper_bound_matches_oracle():
    for n in range(1, 11):
        for w in range(0, 1 << n):
            assert circuit_count_upper_bound(n, w) == bound_oracle(n, w)


def test_upper_bound_errors():
    with pytest.raises(ValueError, match="degenerate"):
        circuit_count_upper_bound(3, 8)
    with pytest.raises(ValueError):
        circuit_count_upper_bound(3, -1)


def test_plan_vs_bound_examples(rng):
    assert plan_vs_bound(SparseMatrix.from_dense(tridiagonal(3))) == (4, 8)
    assert brute_force_d_values(tridiagonal(3)) == [1, 3, 7]
    assert plan_vs_bound(SparseMatrix.from_dense(np.diag([1.0, -1.0]))) == (1, 1)
    assert plan_vs_bound(SparseMatrix.from_dense(random_dense("real_symmetric", 4, rng))) == (16, 32)


def test_count_below_bound_random_bands(rng):
    for n in range(2, 9):
        dim = 1 << n
        for w in (1, 2, 4, 8):
            if w >= dim:
                continue
            for _ in range(20):
                r, c = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
                mask = (np.abs(r - c) <= w) & (rng.random((dim, dim)) < 0.4)
                mask |= mask.T
                a = np.where(mask, rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)), 0)
                count, bound = plan_vs_bound(SparseMatrix.from_dense(a))
                assert count <= bound
