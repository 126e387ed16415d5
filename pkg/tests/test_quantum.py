from __future__ import annotations

import random

import pytest

from hopfcomonad.comod import ComoduleMorphism
from hopfcomonad.corpus import bimonoid_corpus, grouplike_comonoid
from hopfcomonad.errors import AxiomViolation
from hopfcomonad.fusion import fusion_operator, is_right_hopf
from hopfcomonad.linalg import GF, Matrix, mat_inverse
from hopfcomonad.monoidale import enveloping_monoidale
from hopfcomonad.quantum import (QuantumCategoryData, check_quantum_category, from_bimonoid,
                                 hopf_pasting, identity_comonad, is_quantum_groupoid)
from hopfcomonad.structures import Bimonoid, make_comonoid, make_monoid
from hopfcomonad.vect import braiding

from oracles import sympy_rank, to_sympy

CORPUS = bimonoid_corpus()
COCOMMUTATIVE = ["c2_group_algebra", "s3_group_algebra", "idempotent_monoid_algebra",
                 "unit_bimonoid"]


def swap(h):
    return braiding(h.carrier, h.carrier, h.braiding).mat


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_bridge(name):
    h = CORPUS[name]
    v = is_quantum_groupoid(from_bimonoid(h))
    assert v.is_quantum_category, v.diagnostics.to_text()
    assert v.is_quantum_groupoid == is_right_hopf(h)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_pasting_is_galois_after_swap(name):
    h = CORPUS[name]
    raw = hopf_pasting(from_bimonoid(h)).mat
    assert raw == fusion_operator(h, "galois").mat @ swap(h)
    assert sympy_rank(to_sympy(raw)) == sympy_rank(to_sympy(fusion_operator(h, "paper46").mat))


@pytest.mark.parametrize("name", COCOMMUTATIVE)
def test_pasting_conjugate_to_paper_fusion(name):
    h = CORPUS[name]
    c = swap(h)
    assert hopf_pasting(from_bimonoid(h)).mat == c @ fusion_operator(h, "paper46").mat @ c


def test_idempotent_pasting_is_singular():
    v = is_quantum_groupoid(from_bimonoid(CORPUS["idempotent_monoid_algebra"]))
    assert v.hopf_matrix.mat.rank() == 3
    assert "hopf inverse" not in v.diagnostics.certificates


def test_hopf_inverse_certificate():
    v = is_quantum_groupoid(from_bimonoid(CORPUS["sweedler_h4"]))
    inv = v.diagnostics.certificates["hopf inverse"]
    assert (inv @ v.hopf_matrix.mat).is_identity()


def test_sabotaged_comultiplication_fails_counit():
    q = from_bimonoid(CORPUS["c2_group_algebra"])
    bad = QuantumCategoryData(q.base, q.monoidale, q.g,
                              ComoduleMorphism(q.comult.dom, q.comult.cod, q.comult.mat.scale(2)),
                              q.counit, q.phi, q.phi0, "bad")
    r = check_quantum_category(bad, include_monoidale=False)
    assert not r.get("comonad left counit").passed
    assert not is_quantum_groupoid(bad).is_quantum_groupoid


def test_non_bimonoid_rejected():
    h = CORPUS["c2_group_algebra"]
    bad = make_comonoid(h.carrier, h.delta.scale(2), h.epsilon)
    with pytest.raises(AxiomViolation):
        from_bimonoid(Bimonoid(bad, h.monoid))


def transport(h: Bimonoid, p: Matrix) -> Bimonoid:
    """The same bimonoid written in the basis given by the columns of ``p``."""
    pi = mat_inverse(p)
    co = make_comonoid(h.carrier, pi.kron(pi) @ h.delta @ p, h.epsilon @ p)
    mo = make_monoid(h.carrier, pi @ h.mu @ p.kron(p), pi @ h.eta)
    return Bimonoid(co, mo, h.braiding, h.name)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_verdict_invariant_under_change_of_basis(name):
    h = CORPUS[name]
    rnd = random.Random(name)
    n = h.dim
    if n > 4:
        # a shear keeps the six-dimensional structure constants sparse
        p = Matrix.identity(n).with_entry(0, n - 1, 3).with_entry(2, 1, -1)
    else:
        while True:
            p = Matrix.from_entries(n, n, [rnd.randint(-2, 2) for _ in range(n * n)])
            if p.rank() == n:
                break
    v = is_quantum_groupoid(from_bimonoid(transport(h, p)))
    assert (v.is_quantum_category, v.is_quantum_groupoid) == (True, name != "idempotent_monoid_algebra")


@pytest.mark.parametrize("name", ["c2_group_algebra", "idempotent_monoid_algebra"])
def test_bridge_over_prime_field(name):
    h = bimonoid_corpus(GF(5))[name]
    assert is_quantum_groupoid(from_bimonoid(h)).is_quantum_groupoid == is_right_hopf(h)


@pytest.mark.parametrize("n", [1, 2])
def test_identity_comonad(n):
    q = identity_comonad(enveloping_monoidale(grouplike_comonoid(n)))
    v = is_quantum_groupoid(q)
    assert (v.is_quantum_category, v.is_quantum_groupoid) == (True, True), v.diagnostics.to_text()
