from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jetlab.exactlin import (
    INCONSISTENT,
    RatMatrix,
    format_rational,
    nullspace,
    parse_rational,
    rank,
    rref,
    solve,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return RatMatrix(r, c, draw(st.lists(small, min_size=r * c, max_size=r * c)))


def M(rows):
    return RatMatrix.from_rows(rows)


def test_rational_roundtrip():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert format_rational(Fraction(1, 4)) == "1/4"
    assert parse_rational(format_rational(Fraction(-7, 3))) == Fraction(-7, 3)
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_rref_examples():
    z = M([[0, 0], [0, 0]])
    assert rref(z) == (z, [])
    assert rref(M([[2, 4], [1, 2]])) == (M([[1, 2], [0, 0]]), [0])
    eye = RatMatrix.identity(2)
    assert rref(eye) == (eye, [0, 1])


def test_rank_examples():
    assert rank(RatMatrix.identity(5)) == 5
    assert rank(RatMatrix.zeros(3, 4)) == 0
    assert rank(M([[1, 2], [2, 4], [3, 6]])) == 1


def test_nullspace_examples():
    assert nullspace(RatMatrix.identity(4)).cols == 0
    assert nullspace(RatMatrix.zeros(2, 3)).cols == 3
    c = Fraction(3, 5)
    row = [0, 0, 0, 0, 1, 0, 0, 0, c, 0, 0, 1, 0, c, 0]
    ker = nullspace(M([row]))
    assert ker.cols == 14
    assert (M([row]) @ ker).is_zero()


def test_solve_examples():
    b = M([[1, 2], [3, 4]])
    assert solve(RatMatrix.identity(2), b) == b
    assert solve(M([[1, 1], [1, 1]]), M([[0], [1]])) is INCONSISTENT
    assert solve(M([[2]]), M([[3]])) == M([[Fraction(3, 2)]])
    with pytest.raises(ValueError):
        solve(RatMatrix.identity(2), RatMatrix.zeros(3, 1))


def test_inverse_and_det():
    a = M([[2, 1], [1, 1]])
    assert a.det() == 1
    assert a @ a.inverse() == RatMatrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        M([[1, 2], [2, 4]]).inverse()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    ker = nullspace(m)
    assert rank(m) + ker.cols == m.cols
    if ker.cols:
        assert (m @ ker).is_zero()
        assert rank(ker) == ker.cols


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    r, piv = rref(m)
    assert rref(r) == (r, piv)
    assert piv == sorted(set(piv))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_exact(a, data):
    b = RatMatrix(a.rows, 2, data.draw(st.lists(small, min_size=2 * a.rows, max_size=2 * a.rows)))
    x = solve(a, b)
    if x is not INCONSISTENT:
        assert a @ x == b
    else:
        assert rank(a.hstack(b)) > rank(a)
