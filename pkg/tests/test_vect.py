from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcomonad.errors import ShapeMismatch
from hopfcomonad.linalg import GF, QQ, Matrix
from hopfcomonad.vect import (UNIT, MorphismV, VectObject, braiding, internal_hom,
                              tensor_morphisms,
                              koszul_sign, permute_rows, shuffle, tensor_objects)

from oracles import swap_matrix, to_sympy


@st.composite
def objects(draw, max_dim: int = 3):
    d = draw(st.integers(1, max_dim))
    return VectObject(d, tuple(draw(st.lists(st.integers(0, 1), min_size=d, max_size=d))))


def test_tensor_index_convention():
    x, y = VectObject(2, (0, 1)), VectObject(3, (0, 1, 1))
    xy = tensor_objects(x, y)
    assert xy.dim == 6
    # (i, j) -> i * dim(Y) + j, parity adds
    assert xy.parity == (0, 1, 1, 1, 0, 0)


def test_parity_validation():
    with pytest.raises(ShapeMismatch):
        VectObject(2, (0,))
    with pytest.raises(ValueError):
        VectObject(1, (2,))


@settings(max_examples=40, deadline=None)
@given(st.lists(objects(), min_size=2, max_size=3), st.randoms(use_true_random=False),
       st.sampled_from(["symmetric", "super"]))
def test_shuffle_matches_brute_force(objs, rnd, braid):
    perm = list(range(len(objs)))
    rnd.shuffle(perm)
    got = to_sympy(shuffle(objs, perm, braid))
    pars = [o.parity for o in objs] if braid == "super" else None
    assert got == swap_matrix([o.dim for o in objs], perm, pars)


@settings(max_examples=40, deadline=None)
@given(st.lists(objects(), min_size=2, max_size=3), st.randoms(use_true_random=False),
       st.sampled_from(["symmetric", "super"]))
def test_permute_rows_is_shuffle_times_matrix(objs, rnd, braid):
    perm = list(range(len(objs)))
    rnd.shuffle(perm)
    n = 1
    for o in objs:
        n *= o.dim
    m = Matrix.from_entries(n, 2, [(3 * i + j) % 4 - 1 for i in range(n) for j in range(2)])
    assert permute_rows(objs, perm, m, braid) == shuffle(objs, perm, braid) @ m


@settings(max_examples=30, deadline=None)
@given(objects(), objects(), st.sampled_from(["symmetric", "super"]))
def test_braiding_is_involutive(x, y, kind):
    c1 = braiding(x, y, kind)
    c2 = braiding(y, x, kind)
    assert (c2 @ c1).mat.is_identity()


def test_koszul_sign():
    assert koszul_sign([1, 1], [1, 0]) == -1
    assert koszul_sign([1, 0], [1, 0]) == 1
    assert koszul_sign([1, 1, 1], [2, 1, 0]) == -1


def test_super_flag_is_invisible_on_even_objects():
    x = VectObject.even(2)
    assert shuffle([x, x], [1, 0], "super") == shuffle([x, x], [1, 0], "symmetric")


def test_internal_hom_evaluation():
    x, z = VectObject(2, (0, 1)), VectObject.even(3)
    hom, ev = internal_hom(x, z)
    assert hom.dim == 6
    assert ev.mat.shape == (3, 2 * 6)
    # x_k (x) e_ij -> delta_jk z_i
    for i in range(3):
        for j in range(2):
            for k in range(2):
                col = k * 6 + i * 2 + j
                assert ev.mat[i, col] == (1 if j == k else 0)


def test_morphism_shape_checked():
    with pytest.raises(ShapeMismatch):
        MorphismV(UNIT, VectObject.even(2), Matrix.identity(1))


def test_fields_do_not_mix():
    with pytest.raises((ShapeMismatch, ValueError)):
        Matrix.identity(2, QQ) @ Matrix.identity(2, GF(3))


@pytest.mark.parametrize("kind", ["symmetric", "super"])
def test_hexagon(kind):
    x = VectObject(2, (0, 1))
    one = MorphismV(x, x, Matrix.identity(2))
    c = braiding(x, x, kind)
    lhs = tensor_morphisms(c, one) @ tensor_morphisms(one, c) @ tensor_morphisms(c, one)
    rhs = tensor_morphisms(one, c) @ tensor_morphisms(c, one) @ tensor_morphisms(one, c)
    assert lhs.mat == rhs.mat


def test_odd_odd_sign():
    odd = VectObject(1, (1,))
    assert braiding(odd, odd, "super").mat == Matrix.from_rows([[-1]])
    assert braiding(odd, odd, "symmetric").mat == Matrix.from_rows([[1]])


def test_super_signs_collapse_in_characteristic_two():
    odd = VectObject(1, (1,))
    f = GF(2)
    assert braiding(odd, odd, "super", f).mat == braiding(odd, odd, "symmetric", f).mat


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.sampled_from(["symmetric", "super"]))
def test_braiding_naturality(a, b, c, d, kind):
    x = VectObject(2, (0, 1))
    # parity-preserving maps on x are diagonal
    f = MorphismV(x, x, Matrix.from_rows([[a, 0], [0, b]]))
    g = MorphismV(x, x, Matrix.from_rows([[c, 0], [0, d]]))
    br = braiding(x, x, kind)
    assert (br @ tensor_morphisms(f, g)).mat == (tensor_morphisms(g, f) @ br).mat
