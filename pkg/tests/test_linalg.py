from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualseq.errors import ValidationFailed
from dualseq.linalg import (Field, Matrix, block_matrix, complement, inverse,
                            rank, row_space, solve, subspaces)

F2 = Field(2)
F5 = Field(5)
Q = Field(None)

FIELDS = [F2, F5, Q]


def fields():
    return st.sampled_from(FIELDS)


def entries(field):
    if field.p is None:
        return st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.integers(min_value=0, max_value=field.p - 1)


@st.composite
def matrices(draw, field=None, max_dim=4):
    f = field if field is not None else draw(fields())
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    data = draw(st.lists(entries(f), min_size=r * c, max_size=r * c))
    return Matrix(f, r, c, tuple(f.coerce(x) for x in data))


def test_field_rejects_composite():
    with pytest.raises(ValidationFailed):
        Field(6)


def test_field_coerce_fraction_mod_p():
    assert F5.coerce(Fraction(1, 2)) == 3
    with pytest.raises(ValidationFailed):
        F5.coerce(Fraction(1, 5))


def test_matrix_shape_mismatch():
    with pytest.raises(ValidationFailed):
        Matrix(F2, 2, 2, (1, 0, 1))


def test_identity_and_zero():
    i = Matrix.identity(F5, 3)
    z = Matrix.zeros(F5, 3, 3)
    assert rank(i) == 3 and rank(z) == 0
    assert i @ i == i
    assert i + z == i


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    s = subspaces(m)
    assert rank(m) + s.kernel.cols == m.cols
    assert s.image.cols == rank(m)
    assert (m @ s.kernel).is_zero


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_solve_consistency(m):
    s = subspaces(m)
    if m.cols:
        rhs = m @ Matrix(m.field, m.cols, 1,
                         tuple(m.field.one if i == 0 else m.field.zero
                               for i in range(m.cols)))
        x = solve(m, rhs)
        assert x is not None and m @ x == rhs
    # anything outside the column space must be rejected
    if s.image.cols < m.rows:
        comp = complement(s.image, m.rows)
        assert comp.cols > 0
        bad = Matrix(m.field, m.rows, 1,
                     tuple(comp.entry(i, 0) for i in range(m.rows)))
        assert solve(m, bad) is None


@settings(max_examples=40, deadline=None)
@given(matrices(max_dim=3))
def test_inverse_roundtrip(m):
    if m.rows != m.cols or rank(m) != m.rows:
        return
    inv = inverse(m)
    assert m @ inv == Matrix.identity(m.field, m.rows)
    assert inv @ m == Matrix.identity(m.field, m.rows)


def test_complement_spans():
    m = Matrix(F2, 3, 2, (1, 0, 0, 0, 1, 0))
    s = subspaces(m)
    comp = complement(s.image, 3)
    assert s.image.cols + comp.cols == 3
    assert rank(s.image.hstack(comp)) == 3


def test_block_matrix():
    a = Matrix.identity(F5, 2)
    b = Matrix.zeros(F5, 2, 1)
    c = Matrix.zeros(F5, 1, 2)
    d = Matrix.identity(F5, 1)
    m = block_matrix(F5, [[a, b], [c, d]])
    assert m == Matrix.identity(F5, 3)


def test_row_space_canonical():
    rows = [[1, 1, 0], [0, 1, 1]]
    rs1 = row_space([[F2.coerce(x) for x in r] for r in rows], F2, 3)
    rows2 = [[0, 1, 1], [1, 0, 1]]
    rs2 = row_space([[F2.coerce(x) for x in r] for r in rows2], F2, 3)
    assert rs1 == rs2


@settings(max_examples=40, deadline=None)
@given(matrices(field=Q, max_dim=3))
def test_rational_arithmetic_exact(m):
    s = m + m
    assert s == m.scale(Fraction(2))
    assert (s - m) == m
