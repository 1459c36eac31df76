from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given

from spectratope.errors import IndexOutOfRange, LengthMismatch, NotHadamard, ResourceLimit, UnsupportedOrder
from spectratope.hadamard import (
    NormalizedHadamard,
    _is_hadamard,
    from_pm,
    group_matrix,
    hadamard_of_order,
    is_supported_order,
    next_hadamard_order,
    normalize_hadamard,
    order12,
    perm_basis,
    perm_from_walsh_row,
    scheme_basis,
    scheme_index_product,
    to_pm,
    walsh,
)
from spectratope.linalg import RatMatrix, hadamard_product, kron, vector

from strategies import rat_vectors


def test_walsh_small_orders():
    assert walsh(0).matrix == RatMatrix([[1]])
    assert walsh(1).matrix == RatMatrix([[1, 1], [1, -1]])
    assert walsh(2).matrix == RatMatrix([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])


@pytest.mark.parametrize("n", range(6))
def test_walsh_properties(n):
    H = walsh(n).matrix
    N = 2**n
    assert H.is_symmetric()
    assert H @ H == RatMatrix.identity(N).scale(N)
    assert H.col(0) == (1,) * N and H.row(0) == (1,) * N


def test_walsh_cap():
    with pytest.raises(ResourceLimit):
        walsh(13)
    with pytest.raises(ResourceLimit):
        walsh(3, cap=4)


def test_normalize_hadamard():
    assert normalize_hadamard(RatMatrix([[1, 1], [-1, 1]])).matrix == walsh(1).matrix
    assert normalize_hadamard(walsh(2).matrix).matrix == walsh(2).matrix
    with pytest.raises(NotHadamard):
        normalize_hadamard(RatMatrix([[1, 1], [1, 1]]))


def test_order12_constant():
    H = order12().matrix
    assert _is_hadamard(H)
    assert H.row(0) == (1,) * 12 and H.col(0) == (1,) * 12
    assert normalize_hadamard(H).matrix == H


def test_supported_orders():
    assert hadamard_of_order(4).matrix == walsh(2).matrix
    assert hadamard_of_order(12).matrix == order12().matrix
    H24 = hadamard_of_order(24)
    assert H24.order == 24 and _is_hadamard(H24.matrix)
    assert H24.matrix == normalize_hadamard(kron(walsh(1).matrix, order12().matrix)).matrix
    assert [m for m in range(1, 50) if is_supported_order(m)] == [1, 2, 4, 8, 12, 16, 24, 32, 48]


def test_unsupported_order_names_neighbours():
    with pytest.raises(UnsupportedOrder) as info:
        hadamard_of_order(20)
    assert (info.value.below, info.value.above) == (16, 24)


def test_next_order():
    assert next_hadamard_order(5) == 8
    assert next_hadamard_order(9) == 12
    assert next_hadamard_order(4) == 4
    assert next_hadamard_order(25) == 32


def test_normalized_hadamard_validation():
    with pytest.raises(NotHadamard):
        NormalizedHadamard(2, RatMatrix([[1, 1], [-1, 1]]))
    assert NormalizedHadamard(4, walsh(2).matrix).is_walsh
    assert not order12().is_walsh


def test_pm_roundtrip():
    text = to_pm(walsh(2).matrix)
    assert text.splitlines() == ["++++", "+-+-", "++--", "+--+"]
    assert from_pm(text) == walsh(2).matrix


def test_perm_basis_examples():
    for n in range(4):
        assert perm_basis(n, 1).as_matrix() == RatMatrix.identity(2**n)
        assert perm_basis(n, 2**n).as_matrix() == RatMatrix.exchange(2**n)
    swap = RatMatrix([[0, 1], [1, 0]])
    assert perm_basis(2, 2).as_matrix() == kron(RatMatrix.identity(2), swap)
    with pytest.raises(IndexOutOfRange):
        perm_basis(2, 5)


def test_perm_from_walsh_row_examples():
    assert perm_from_walsh_row(1, 2) == RatMatrix([[0, 1], [1, 0]])
    assert perm_from_walsh_row(3, 1) == RatMatrix.identity(8)
    assert perm_from_walsh_row(2, 3) == perm_basis(2, 3).as_matrix()


def test_group_matrix_examples():
    e1 = [1] + [0] * 7
    assert group_matrix(3, e1) == RatMatrix.identity(8)
    assert group_matrix(3, [1] * 8) == RatMatrix.ones(8)
    x = [F(k) for k in range(1, 9)]
    M = group_matrix(3, x)
    assert M.row(0) == tuple(x)
    assert M.row(1) == (2, 1, 4, 3, 6, 5, 8, 7)
    with pytest.raises(LengthMismatch):
        group_matrix(2, [1, 2, 3])


def test_group_matrix_full_display():
    # rows of the 8x8 display, as index patterns into x
    rows = [
        (1, 2, 3, 4, 5, 6, 7, 8),
        (2, 1, 4, 3, 6, 5, 8, 7),
        (3, 4, 1, 2, 7, 8, 5, 6),
        (4, 3, 2, 1, 8, 7, 6, 5),
        (5, 6, 7, 8, 1, 2, 3, 4),
        (6, 5, 8, 7, 2, 1, 4, 3),
        (7, 8, 5, 6, 3, 4, 1, 2),
        (8, 7, 6, 5, 4, 3, 2, 1),
    ]
    assert group_matrix(3, list(range(1, 9))) == RatMatrix(rows)


def test_scheme_index_product_examples():
    assert scheme_index_product(3, 1, 5) == 5
    assert scheme_index_product(3, 6, 6) == 1
    assert scheme_index_product(2, 2, 3) == 4


@pytest.mark.parametrize("n", range(4))
def test_index_product_matches_multiplication(n):
    N = 2**n
    for k, l in itertools.product(range(1, N + 1), repeat=2):
        prod = perm_basis(n, k).as_matrix() @ perm_basis(n, l).as_matrix()
        assert prod == perm_basis(n, scheme_index_product(n, k, l)).as_matrix()


def test_image_map_is_xor():
    for n in range(5):
        for k in range(1, 2**n + 1):
            assert perm_basis(n, k).image == tuple(i ^ (k - 1) for i in range(2**n))


def test_scheme_basis_sums_to_J():
    mats = scheme_basis(3).matrices()
    total = mats[0]
    for M in mats[1:]:
        total = total + M
    assert total == RatMatrix.ones(8)


@given(rat_vectors(8), rat_vectors(8))
def test_bose_mesner_closure(x, y):
    Mx, My = group_matrix(3, x), group_matrix(3, y)
    assert hadamard_product(Mx, My) == group_matrix(3, [a * b for a, b in zip(x, y)])
    z = [sum(a * b for a, b in zip(x, perm_basis(3, k).as_matrix() @ vector(y))) for k in range(1, 9)]
    assert Mx @ My == group_matrix(3, z)
    assert Mx @ My == My @ Mx
