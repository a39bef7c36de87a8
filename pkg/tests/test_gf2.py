import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partial_pauli.gf2 import build_transform, image_pair, pivot_bit, popcount, xor_diff


def gf2_matvec(matrix: np.ndarray, x: int) -> int:
    """Independent oracle: dense 0/1 matrix times bit vector, mod 2."""
    n = matrix.shape[0]
    bits = np.array([(x >> j) & 1 for j in range(n)])
    y = matrix.astype(int) @ bits % 2
    return int(sum(int(b) << i for i, b in enumerate(y)))


@st.composite
def transforms(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, (1 << n) - 1))
    return build_transform(n, d)


@pytest.mark.parametrize("r,c,expected", [(0b00, 0b11, 0b11), (0b010, 0b111, 0b101), (5, 5, 0)])
def test_xor_diff(r, c, expected):
    assert xor_diff(r, c) == expected


def test_xor_diff_length_mismatch():
    with pytest.raises(ValueError):
        xor_diff(0b100, 0b1, n=2)


@pytest.mark.parametrize("d,k", [(0b101, 0), (0b110, 1), (0b100, 2)])
def test_pivot_bit(d, k):
    assert pivot_bit(d) == k


def test_pivot_bit_rejects_zero():
    with pytest.raises(ValueError, match="diagonal"):
        pivot_bit(0)


def test_build_transform_n2():
    t = build_transform(2, 0b11)
    assert {x: t.apply(x) for x in range(4)} == {0b00: 0b00, 0b01: 0b11, 0b10: 0b10, 0b11: 0b01}
    assert t.matrix.tolist() == [[1, 0], [1, 1]]


def test_build_transform_n3():
    t = build_transform(3, 0b101)
    assert t.apply(0b111) == 0b011
    assert t.apply(0b010) == 0b010


def test_build_transform_unit_d_is_identity():
    t = build_transform(1, 0b1)
    assert [t.apply(x) for x in range(2)] == [0, 1]
    t = build_transform(4, 0b0100)
    assert all(t.apply(x) == x for x in range(16))


@pytest.mark.parametrize("n,d", [(2, 0), (2, 4), (3, 8)])
def test_build_transform_rejects_bad_d(n, d):
    with pytest.raises(ValueError):
        build_transform(n, d)


def test_build_transform_pivot_knob():
    t = build_transform(3, 0b110, pivot=2)
    assert t.pivot == 2
    assert t.matrix[:, 2].tolist() == [0, 1, 1]
    with pytest.raises(ValueError, match="not a set bit"):
        build_transform(3, 0b110, pivot=0)


def test_apply_examples():
    t = build_transform(2, 0b11)
    assert t.apply(0b01) == 0b11
    assert t.apply(0) == 0
    with pytest.raises(ValueError):
        t.apply(4)


@pytest.mark.parametrize(
    "n,d,r,c,expected",
    [(2, 0b11, 0b00, 0b11, (0b00, 0b01)), (3, 0b101, 0b010, 0b111, (0b010, 0b011))],
)
def test_image_pair(n, d, r, c, expected):
    assert image_pair(build_transform(n, d), r, c) == expected


def test_image_pair_unit_d_unchanged():
    t = build_transform(3, 0b010)
    assert image_pair(t, 0b101, 0b111) == (0b101, 0b111)


def test_image_pair_wrong_difference():
    with pytest.raises(ValueError):
        image_pair(build_transform(2, 0b11), 0, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_exhaustive_structure(n):
    for d in range(1, 1 << n):
        t = build_transform(n, d)
        k = pivot_bit(d)
        mat = t.matrix
        eye = np.eye(n, dtype=np.uint8)
        # column k is d, the other columns are the identity's
        assert [int(b) for b in mat[:, k]] == [(d >> i) & 1 for i in range(n)]
        assert np.array_equal(np.delete(mat, k, axis=1), np.delete(eye, k, axis=1))
        xs = np.arange(1 << n)
        images = [t.apply(x) for x in range(1 << n)]
        assert images == [gf2_matvec(mat, x) for x in range(1 << n)]
        assert images == t.apply_indices(xs).tolist()
        assert [t.apply(y) for y in images] == list(range(1 << n))
        assert all((images[x] == x) == t.fixes(x) for x in range(1 << n))
        if popcount(d) > 1:
            assert all((images[x] == x) == (not (x >> k) & 1) for x in range(1 << n))
        else:
            assert images == list(range(1 << n))
        for x in range(1 << n):
            a, b = image_pair(t, x, x ^ d)
            assert popcount(a ^ b) == 1 and a ^ b == 1 << k


@given(transforms())
def test_involution_property(t):
    for x in range(1 << t.n):
        assert t.apply(t.apply(x)) == x


@given(transforms(max_n=12), st.data())
def test_apply_linear(t, data):
    x = data.draw(st.integers(0, (1 << t.n) - 1))
    y = data.draw(st.integers(0, (1 << t.n) - 1))
    assert t.apply(x ^ y) == t.apply(x) ^ t.apply(y)


@pytest.mark.parametrize("n", range(2, 6))
def test_non_overlap_cover(n):
    seen = set()
    for d in range(1, 1 << n):
        for x in range(1 << n):
            pair = frozenset((x, x ^ d))
            if (x >> pivot_bit(d)) & 1:
                continue
            assert pair not in seen
            seen.add(pair)
    assert len(seen) == (1 << (n - 1)) * ((1 << n) - 1)
