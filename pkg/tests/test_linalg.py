from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcomonad.errors import NotInSubspace, NotInvertible, ShapeMismatch
from hopfcomonad.linalg import (GF, QQ, Matrix, SubspaceEmbedding, apply_middle,
                                equalizer_subspace, factor_through, is_invertible, kernel_basis,
                                kron_all, mat_inverse, parse_field, solve)

from oracles import kron, rank_gf, rank_qq, to_sympy

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_dim: int = 5, rows: int | None = None, cols: int | None = None):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    entries = draw(st.lists(small, min_size=r * c, max_size=r * c))
    return Matrix.from_entries(r, c, entries, QQ)


def test_scalars_normalise():
    assert QQ.norm(Fraction(4, 2)) == 2 and type(QQ.norm(Fraction(4, 2))) is int
    assert QQ.parse(" 6/4 ") == Fraction(3, 2)
    assert QQ.format(Fraction(-6, 4)) == "-3/2"
    f5 = GF(5)
    assert f5.parse("-1") == 4
    assert f5.parse("1/2") == 3
    assert f5.format(7) == "2"


def test_field_parsing():
    assert parse_field("rational") == QQ
    assert parse_field("prime:5") == GF(5) == parse_field("GF(5)")
    with pytest.raises(ValueError):
        parse_field("prime:6")
    with pytest.raises(ValueError):
        QQ.parse("0.5")


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert m.rank() == rank_qq(m)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_over_prime_field_matches_domain_matrix(m, p):
    mp = Matrix.from_entries(m.nrows, m.ncols, m.entries, GF(p))
    assert mp.rank() == rank_gf(m, p)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_basis(m):
    k = kernel_basis(m)
    assert k.dim == m.ncols - rank_qq(m)
    assert (m @ k.basis).is_zero()
    # canonical: pivot rows of the basis form an identity block
    assert k.basis.select_rows(k.pivots).is_identity()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(rows=n, cols=n)))
def test_inverse_matches_sympy(m):
    s = to_sympy(m)
    if s.det() == 0:
        assert not is_invertible(m)
        with pytest.raises(NotInvertible):
            mat_inverse(m)
    else:
        assert to_sympy(mat_inverse(m)) == s.inv()


@settings(max_examples=40, deadline=None)
@given(matrices(max_dim=3), matrices(max_dim=3))
def test_kron_matches_oracle(a, b):
    assert to_sympy(a.kron(b)) == kron(to_sympy(a), to_sympy(b))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), matrices(max_dim=3), st.integers(1, 3))
def test_apply_middle(left, right, t, k):
    m = Matrix.from_entries(left * t.ncols * right, k,
                            [(i * 7 + j) % 5 - 2 for i in range(left * t.ncols * right)
                             for j in range(k)], QQ)
    expected = kron_all([Matrix.identity(left), t, Matrix.identity(right)]) @ m
    assert apply_middle(left, t, right, m) == expected


@settings(max_examples=40, deadline=None)
@given(matrices(max_dim=4), st.lists(small, min_size=4, max_size=4))
def test_solve(a, xs):
    x = Matrix.from_entries(a.ncols, 1, (xs * 2)[: a.ncols], QQ)
    b = a @ x
    sol, kernel = solve(a, b)
    assert a @ sol == b
    assert kernel == a.ncols - rank_qq(a)


def test_solve_inconsistent():
    a = Matrix.from_rows([[1, 1], [1, 1]])
    with pytest.raises(NotInSubspace):
        solve(a, Matrix.from_rows([[1], [2]]))


def test_factor_through_and_span():
    v = Matrix.from_rows([[1, 2], [0, 0], [1, 2]])
    e = SubspaceEmbedding.span(v)
    assert e.dim == 1
    x = factor_through(e, v)
    assert e.basis @ x == v
    with pytest.raises(NotInSubspace):
        factor_through(e, Matrix.from_rows([[1], [1], [0]]))
    with pytest.raises(ShapeMismatch):
        factor_through(e, Matrix.from_rows([[1], [1]]))


def test_equalizer_with_retraction():
    f = Matrix.from_rows([[1, 0], [0, 1], [0, 0]])
    g = Matrix.from_rows([[1, 0], [0, 0], [0, 1]])
    r = Matrix.from_rows([[1, 0, 0], [0, 1, 1]])
    e = equalizer_subspace(f, g, r)
    assert e.dim == 1
    with pytest.raises(ShapeMismatch):
        equalizer_subspace(f, g, Matrix.from_rows([[1, 0, 0], [0, 1, 0]]))


def test_prime_field_inverse():
    f = GF(7)
    m = Matrix.from_rows([[2, 3], [1, 4]], f)
    inv = mat_inverse(m)
    assert m @ inv == Matrix.identity(2, f)
    assert sp.Matrix([[2, 3], [1, 4]]).inv_mod(7) == sp.Matrix(inv.to_rows())
