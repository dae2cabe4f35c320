from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artinalg.field import QQ, GF, FieldSpec, FieldMismatchError
from artinalg.matrix import SparseMatrix, column_space_basis, direct_sum


def test_fieldspec_validation():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2**31 + 11)
    assert str(GF(101)) == "F_101"
    assert str(QQ) == "Q"


def test_rref_identity():
    m = SparseMatrix.identity(2, QQ)
    res = m.rref()
    assert res.rank == 2
    assert res.kernel_basis.ncols == 0
    assert res.pivot_columns == [0, 1]


def test_rref_zero_matrix():
    m = SparseMatrix.zeros(3, 4, QQ)
    res = m.rref()
    assert res.rank == 0
    assert res.kernel_basis.ncols == 4
    # kernel is the whole space: standard basis vectors
    assert res.kernel_basis == SparseMatrix.identity(4, QQ)


def test_rref_rank_one_mod_p():
    F = GF(101)
    m = SparseMatrix.from_dense([[1, 2], [2, 4]], F)
    res = m.rref()
    assert res.rank == 1
    assert res.kernel_basis.ncols == 1
    v = res.kernel_basis.column(0)
    # spans (2, -1)^t up to scaling: v0 * (-1) == v1 * 2 is the proportionality
    assert (v.get(0, 0) * 1 + v.get(1, 0) * 2) % 101 == 0
    assert v != {}


def test_kernel_vectors_map_to_zero():
    F = GF(7)
    m = SparseMatrix.from_dense([[1, 2, 3], [4, 5, 6], [5, 0, 1]], F)
    res = m.rref()
    prod = m.matmul(res.kernel_basis)
    assert prod.is_zero()
    assert res.rank + res.kernel_basis.ncols == m.ncols


def test_matmul_examples():
    m = SparseMatrix.from_dense([[1, 1], [0, 1]], QQ)
    sq = m.matmul(m)
    assert sq == SparseMatrix.from_dense([[1, 2], [0, 1]], QQ)
    I = SparseMatrix.identity(2, QQ)
    assert I.matmul(m) == m
    z = SparseMatrix.zeros(2, 3, QQ)
    assert m.matmul(z).is_zero()


def test_field_mismatch_error():
    a = SparseMatrix.identity(2, QQ)
    b = SparseMatrix.identity(2, GF(5))
    with pytest.raises(FieldMismatchError):
        a.matmul(b)


def test_rational_entries_exact():
    m = SparseMatrix.from_dense([[Fraction(1, 3), Fraction(2, 3)],
                                 [Fraction(1, 6), Fraction(1, 3)]], QQ)
    res = m.rref()
    assert res.rank == 1


def test_column_space_basis_identity_rows():
    F = GF(101)
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [0, 1, 1]], F)
    basis, piv = column_space_basis(m)
    assert basis.ncols == 2
    for k, r in enumerate(piv):
        col = {i: basis.get(i, k) for i in range(basis.nrows)}
        assert col.get(r) == 1


def test_direct_sum_shapes():
    a = SparseMatrix.identity(2, QQ)
    b = SparseMatrix.from_dense([[0, 1]], QQ)
    d = direct_sum([a, b])
    assert (d.nrows, d.ncols) == (3, 4)
    assert d.get(2, 3) == 1


_small = st.integers(min_value=-6, max_value=6)


def _random_matrix(field, draw_entries, nrows, ncols):
    return SparseMatrix.from_dense(
        [[field.of(v) for v in row] for row in draw_entries], field)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(_small, min_size=3, max_size=3), min_size=2, max_size=5))
def test_rank_equals_rank_of_transpose(entries):
    for field in (QQ, GF(7)):
        m = _random_matrix(field, entries, len(entries), 3)
        assert m.rref().rank == m.transpose().rref().rank


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(_small, min_size=4, max_size=4), min_size=3, max_size=4))
def test_rref_idempotent(entries):
    for field in (QQ, GF(11)):
        m = _random_matrix(field, entries, len(entries), 4)
        res = m.rref()
        reduced = SparseMatrix(len(res.reduced_rows), m.ncols, field,
                               [dict(r) for r in res.reduced_rows])
        res2 = reduced.rref()
        assert res2.rank == res.rank
        assert res2.pivot_columns == res.pivot_columns


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(_small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(_small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_modp_matches_integer_arithmetic(ea, eb):
    p = 13
    a_int = SparseMatrix.from_dense(ea, QQ)
    b_int = SparseMatrix.from_dense(eb, QQ)
    prod_int = a_int.matmul(b_int)
    F = GF(p)
    a_p = SparseMatrix.from_dense(ea, F)
    b_p = SparseMatrix.from_dense(eb, F)
    prod_p = a_p.matmul(b_p)
    for i in range(3):
        for j in range(3):
            assert prod_p.get(i, j) == int(prod_int.get(i, j)) % p


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(_small, min_size=5, max_size=5), min_size=4, max_size=6))
def test_sparse_and_dense_paths_agree(entries):
    # the dense mod-p path and the generic sparse path compute the same rref
    F = GF(101)
    m = _random_matrix(F, entries, len(entries), 5)
    dense = m._rref_dense_modp()
    sparse = m._rref_sparse()
    assert dense.rank == sparse.rank
    assert dense.pivot_columns == sparse.pivot_columns
    assert dense.kernel_basis == sparse.kernel_basis
