from __future__ import annotations

import pytest

from hopfcomonad.corpus import (bimonoid_corpus, comonoid_corpus, divided_power_comonoid,
                                grouplike_comonoid, odd_pairing_comonoid, s3_table)
from hopfcomonad.errors import NotAMonoid, ShapeMismatch
from hopfcomonad.linalg import GF, QQ, Matrix
from hopfcomonad.structures import (Bimonoid, check_bimonoid, check_comonoid, check_monoid,
                                    convolution, dual_comonoid, make_comonoid, monoid_algebra,
                                    tensor_comonoid)

FIELDS = [QQ, GF(5)]


@pytest.mark.parametrize("f", FIELDS, ids=["QQ", "GF5"])
def test_corpus_bimonoids_pass(f):
    for name, h in bimonoid_corpus(f).items():
        assert check_bimonoid(h).passed, name


@pytest.mark.parametrize("f", FIELDS, ids=["QQ", "GF5"])
def test_corpus_comonoids_pass(f):
    for name, c in comonoid_corpus(f).items():
        assert check_comonoid(c).passed, name


def test_super_comonoids_pass():
    for c in (divided_power_comonoid(odd=True), odd_pairing_comonoid()):
        assert check_comonoid(c).passed


def test_s3_table_is_a_group():
    t = s3_table()
    assert len(t) == 6
    e = next(i for i in range(6) if all(t[i][j] == j for j in range(6)))
    for a in range(6):
        assert any(t[a][b] == e for b in range(6))


def test_dimensions():
    dims = {n: h.dim for n, h in bimonoid_corpus().items()}
    assert dims == {"c2_group_algebra": 2, "s3_group_algebra": 6,
                    "idempotent_monoid_algebra": 2, "sweedler_h4": 4, "unit_bimonoid": 1}


def test_scaled_comultiplication_breaks_counit():
    c = grouplike_comonoid(2)
    bad = make_comonoid(c.carrier, c.delta.mat.scale(2), c.epsilon.mat)
    r = check_comonoid(bad)
    assert not r.passed
    assert not r.get("left counit").passed or not r.get("right counit").passed


def test_non_associative_table_is_rejected():
    with pytest.raises(NotAMonoid):
        monoid_algebra([[0, 0], [1, 0]])


def test_wrong_delta_shape():
    c = grouplike_comonoid(2)
    with pytest.raises(ShapeMismatch):
        make_comonoid(c.carrier, Matrix.identity(2), c.epsilon.mat)


def test_broken_compatibility_detected():
    h = bimonoid_corpus()["c2_group_algebra"]
    # replace the group-like comultiplication by a primitive-style one
    delta = Matrix.from_dict(4, 2, {(0, 0): 1, (1, 1): 1, (2, 1): 1})
    co = make_comonoid(h.carrier, delta, Matrix.from_rows([[1, 0]]))
    r = check_bimonoid(Bimonoid(co, h.monoid))
    assert not r.passed


def test_dual_comonoid_passes_both_braidings():
    for c in (grouplike_comonoid(2), divided_power_comonoid(odd=True), odd_pairing_comonoid()):
        for braid in ("symmetric", "super"):
            assert check_comonoid(dual_comonoid(c, braid)).passed


def test_super_dual_picks_up_sign():
    c = odd_pairing_comonoid()
    sym = dual_comonoid(c, "symmetric").delta.mat
    sup = dual_comonoid(c, "super").delta.mat
    assert sym[3, 0] == 1 and sup[3, 0] == -1


def test_tensor_comonoid_passes():
    a, b = grouplike_comonoid(2), divided_power_comonoid(odd=True)
    assert check_comonoid(tensor_comonoid(a, b, "super")).passed


def test_convolution_unit():
    h = bimonoid_corpus()["sweedler_h4"]
    unit = h.eta @ h.epsilon
    one = Matrix.identity(h.dim)
    assert convolution(h, one, unit) == one == convolution(h, unit, one)


def test_monoid_check_reports_unit():
    h = bimonoid_corpus()["c2_group_algebra"]
    r = check_monoid(h.monoid)
    assert r.get("left unit").passed and r.get("right unit").passed
