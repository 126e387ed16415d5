from __future__ import annotations

import pytest

from hopfcomonad.comod import (ComoduleMorphism, biduality_data, box_cells, check_comodule,
                               check_comodule_morphism, compose_comodules, constraint_isos,
                               identity_cell, identity_comodule, identity_on,
                               is_invertible_morphism, make_comodule, snake_composites,
                               structural_iso, tensor_comodules)
from hopfcomonad.corpus import (comonoid_corpus, divided_power_comonoid, grouplike_comonoid,
                                odd_pairing_comonoid)
from hopfcomonad.errors import FactorizationFailure, ShapeMismatch
from hopfcomonad.linalg import GF, QQ, Matrix
from hopfcomonad.structures import unit_comonoid
from hopfcomonad.vect import VectObject

from oracles import fork_kernel_dim

BASIC = dict(comonoid_corpus())
SUPER = {"D2": divided_power_comonoid(), "D2odd": divided_power_comonoid(odd=True),
         "P2odd": odd_pairing_comonoid()}
BRAIDS = ["symmetric", "super"]


def plain(dim: int, f=QQ, name: str = "V"):
    k = unit_comonoid(f)
    return make_comodule(k, k, VectObject.even(dim), Matrix.identity(dim, f), name)


@pytest.mark.parametrize("name", sorted(BASIC) + sorted(SUPER))
@pytest.mark.parametrize("braid", BRAIDS)
def test_identity_and_biduality_are_comodules(name, braid):
    c = {**BASIC, **SUPER}[name]
    assert check_comodule(identity_comodule(c, braid)).passed
    e, n = biduality_data(c, braid)
    assert check_comodule(e).passed and check_comodule(n).passed
    for snake, one in snake_composites(c, e, n, braid):
        assert snake.dim == one.dim
        assert is_invertible_morphism(structural_iso(snake, one))


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (3, 2), (4, 1)])
def test_composition_over_k_multiplies_dimensions(a, b):
    k = compose_comodules(plain(a), plain(b))
    assert k.dim == a * b
    assert fork_kernel_dim(plain(a), plain(b)) == a * b


def test_composition_over_k_with_nontrivial_ends():
    c = grouplike_comonoid(2)
    e, n = biduality_data(c)
    k = compose_comodules(e, plain(3))
    assert k.dim == e.dim * 3
    k2 = compose_comodules(plain(2), n)
    assert k2.dim == 2 * n.dim


def _cases():
    out = []
    for name, c in {**BASIC, **SUPER}.items():
        for braid in BRAIDS:
            one = identity_comodule(c, braid)
            e, n = biduality_data(c, braid)
            out.append((f"{name}-{braid}-id.id", one, one))
            out.append((f"{name}-{braid}-snake", tensor_comodules(one, n), tensor_comodules(e, one)))
            out.append((f"{name}-{braid}-n.id", n, identity_on(n.tgt_legs, braid)))
            out.append((f"{name}-{braid}-id.e", identity_on(e.src_legs, braid), e))
    return out


CASES = _cases()


@pytest.mark.parametrize("label,m,n", CASES, ids=[c[0] for c in CASES])
def test_composite_dimension_matches_fork_kernel(label, m, n):
    if m.tgt != n.src:
        pytest.skip("not composable")
    k = compose_comodules(m, n)
    assert k.dim == fork_kernel_dim(m, n)
    assert check_comodule(k).passed


@pytest.mark.parametrize("label,m,n", CASES, ids=[c[0] for c in CASES])
def test_fast_paths_agree_with_direct(label, m, n):
    if m.tgt != n.src:
        pytest.skip("not composable")
    fast = compose_comodules(m, n, method="auto")
    slow = compose_comodules(m, n, method="direct")
    assert fast.sub.basis == slow.sub.basis
    assert fast.coaction.mat == slow.coaction.mat


@pytest.mark.parametrize("name", ["G2", "D2odd"])
def test_reassociated_composite_agrees_with_direct(name):
    c = grouplike_comonoid(2) if name == "G2" else divided_power_comonoid(odd=True)
    one = identity_comodule(c, "super")
    inner = compose_comodules(one, one)                 # carries parts, triggers reassociation
    fast = compose_comodules(one, inner, method="auto")
    slow = compose_comodules(one, inner, method="direct")
    assert fast.sub.basis == slow.sub.basis
    assert fast.coaction.mat == slow.coaction.mat


@pytest.mark.parametrize("name", sorted(BASIC))
def test_unit_and_associativity_isos(name):
    c = BASIC[name]
    one = identity_comodule(c)
    assoc, left, right = constraint_isos(one, one, one)
    for iso in (assoc, left, right):
        assert is_invertible_morphism(iso)


@pytest.mark.parametrize("name", sorted(BASIC))
def test_unit_isos_for_an_opaque_comodule(name):
    c = BASIC[name]
    m = make_comodule(c, c, c.carrier, identity_comodule(c).coaction.mat, "M")
    _, left, right = constraint_isos(m, m, m)
    assert is_invertible_morphism(left) and is_invertible_morphism(right)


def test_associativity_iso_with_biduality():
    c = grouplike_comonoid(2)
    e, n = biduality_data(c)
    one = identity_comodule(c)
    m = tensor_comodules(one, n)
    q = tensor_comodules(e, one)
    assoc, _, _ = constraint_isos(identity_comodule(c), m, q)
    assert is_invertible_morphism(assoc)


def test_scaled_coaction_fails():
    c = grouplike_comonoid(2)
    one = identity_comodule(c)
    bad = make_comodule(c, c, c.carrier, one.coaction.mat.scale(2), "bad")
    assert not check_comodule(bad).passed


def test_composition_shape_errors():
    with pytest.raises(ShapeMismatch):
        compose_comodules(identity_comodule(grouplike_comonoid(2)),
                          identity_comodule(grouplike_comonoid(1)))


def test_structural_iso_refuses_different_wiring():
    c = grouplike_comonoid(2)
    one = identity_comodule(c)
    coupon = make_comodule(c, c, c.carrier, one.coaction.mat, "M")
    with pytest.raises(FactorizationFailure):
        structural_iso(one, coupon)


def test_comodule_morphism_check():
    c = grouplike_comonoid(2)
    one = identity_comodule(c)
    assert check_comodule_morphism(identity_cell(one)).passed
    swap = ComoduleMorphism(one, one, Matrix.from_rows([[0, 1], [1, 0]]))
    assert not check_comodule_morphism(swap).passed


def test_horizontal_composite_of_identities():
    c = grouplike_comonoid(2)
    one = identity_comodule(c)
    cell = box_cells(identity_cell(one), identity_cell(one))
    assert cell.mat.is_identity()


def test_prime_field_composition():
    f = GF(3)
    c = grouplike_comonoid(2, f)
    one = identity_comodule(c)
    k = compose_comodules(one, one)
    assert k.dim == fork_kernel_dim(one, one) == 2
