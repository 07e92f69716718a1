"""Exact linear algebra kernel: fields, matrices, canonical eliminations."""

import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from quiverfilt import GF, QQ, Matrix
from quiverfilt.errors import FormatError, InvariantError
from quiverfilt.linalg import (
    column_space_basis,
    columns_contained,
    hstack,
    inverse,
    is_invertible,
    mat_from_cols,
    nullspace_basis,
    preimage_basis,
    quotient_map,
    rank,
    rref,
    solve,
    vstack,
)

F2 = GF(2)
F5 = GF(5)


def mq(rows):
    return Matrix.from_rows(QQ, [[QQ.of(x) for x in r] for r in rows])


# ---------------------------------------------------------------------------
# fields


def test_rational_scalar_round_trip():
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert QQ.format(Fraction(-3, 4)) == "-3/4"
    assert QQ.format(Fraction(0)) == "0"
    assert QQ.format(Fraction(5)) == "5"


def test_prime_field_parse_rejects_out_of_range():
    assert F5.parse("3") == 3
    with pytest.raises(FormatError):
        F5.parse("7")
    with pytest.raises(FormatError):
        F5.parse("-1")


def test_prime_field_arithmetic():
    assert F5.add(3, 4) == 2
    assert F5.inv(2) == 3
    assert F5.neg(1) == 4
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


def test_gf_requires_prime():
    with pytest.raises(InvariantError):
        GF(6)
    assert GF(5) is GF(5)  # cached singleton


def test_field_identity():
    assert QQ == QQ and QQ != F5 and F5 != F2


# ---------------------------------------------------------------------------
# rref / rank / nullspace, frozen examples


def test_rref_identity_fixed_point():
    m = Matrix.identity(QQ, 2)
    r, pivots = rref(m)
    assert r == m and pivots == (0, 1)


def test_rref_rank_one():
    r, pivots = rref(mq([[1, 2], [2, 4]]))
    assert r == mq([[1, 2], [0, 0]])
    assert pivots == (0,)


def test_rref_over_f2():
    m = Matrix.from_rows(F2, [[1, 1], [1, 0]])
    r, pivots = rref(m)
    assert r == Matrix.identity(F2, 2)
    assert pivots == (0, 1)


def test_nullspace_identity_empty():
    assert nullspace_basis(Matrix.identity(QQ, 3)) == []


def test_nullspace_zero_matrix_full():
    vecs = nullspace_basis(Matrix.zeros(QQ, 2, 3))
    assert len(vecs) == 3


def test_nullspace_single_row():
    m = mq([[1, 2, 3]])
    vecs = nullspace_basis(m)
    assert len(vecs) == 2
    for v in vecs:
        assert m.mul(v).is_zero()


def test_solve_and_inverse():
    a = mq([[1, 2], [3, 5]])
    b = mq([[1], [0]])
    x = solve(a, b)
    assert a.mul(x) == b
    assert a.mul(inverse(a)) == Matrix.identity(QQ, 2)
    assert solve(mq([[1, 0], [0, 0]]), mq([[0], [1]])) is None
    assert not is_invertible(mq([[1, 2], [2, 4]]))


def test_stack_helpers():
    a, b = mq([[1], [2]]), mq([[3], [4]])
    assert hstack([a, b]) == mq([[1, 3], [2, 4]])
    assert vstack([a, b]) == mq([[1], [2], [3], [4]])
    assert mat_from_cols(QQ, 2, [[QQ.of(1), QQ.of(2)]]) == a


def test_column_space_and_quotient():
    m = mq([[1, 2], [2, 4]])
    basis = column_space_basis(m)
    assert basis.cols == 1
    proj = quotient_map(basis)
    assert proj.rows == 1 and proj.mul(basis).is_zero()
    assert columns_contained(m, basis)
    assert not columns_contained(Matrix.identity(QQ, 2), basis)


def test_preimage_basis():
    a = mq([[1, 0], [0, 0]])
    target = mq([[1], [0]])
    pre = preimage_basis(a, target)
    # preimage of a line under a rank-1 map: 2-dimensional
    assert pre.cols == 2
    assert columns_contained(a.mul(pre), target)


def test_zero_dimension_edge_cases():
    e = Matrix.zeros(QQ, 0, 3)
    assert rank(e) == 0
    assert len(nullspace_basis(e)) == 3
    assert rref(Matrix.zeros(QQ, 3, 0))[1] == ()
    assert is_invertible(Matrix.zeros(QQ, 0, 0))


# ---------------------------------------------------------------------------
# properties

_dims = st.integers(min_value=0, max_value=4)
_entry = st.integers(min_value=-5, max_value=5)


def _matrix(field):
    return st.tuples(_dims, _dims).flatmap(
        lambda shape: st.lists(
            _entry, min_size=shape[0] * shape[1], max_size=shape[0] * shape[1]
        ).map(
            lambda ent: Matrix(
                field, shape[0], shape[1], [field.of(x) for x in ent]
            )
        )
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F5]).flatmap(_matrix))
def test_rref_idempotent(m):
    r, pivots = rref(m)
    again, pivots2 = rref(r)
    assert again == r and pivots2 == pivots


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F5]).flatmap(_matrix))
def test_rank_nullity(m):
    assert rank(m) + len(nullspace_basis(m)) == m.cols


@settings(max_examples=40, deadline=None)
@given(_matrix(QQ), st.lists(_entry, min_size=4, max_size=4))
def test_solve_consistent_systems(m, coeffs):
    x = Matrix(QQ, m.cols, 1, [QQ.of(coeffs[i % 4]) for i in range(m.cols)])
    b = m.mul(x)
    sol = solve(m, b)
    assert sol is not None and m.mul(sol) == b
