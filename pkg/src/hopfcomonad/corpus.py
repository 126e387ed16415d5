"""Built-in test objects.

Every corpus member is generated from its defining relations here; the
JSON documents under ``corpus/`` are serialized from these constructors.
"""

from __future__ import annotations

from itertools import permutations

from .linalg import QQ, Field, Matrix
from .modules import ModuleOverBimonoid, make_module, regular_module, trivial_module
from .structures import (Bimonoid, Comonoid, make_comonoid, make_monoid, monoid_algebra,
                         unit_comonoid)
from .vect import VectObject

C2_TABLE = [[0, 1], [1, 0]]
IDEMPOTENT_TABLE = [[0, 1], [1, 1]]


def c2_group_algebra(field: Field = QQ) -> Bimonoid:
    return monoid_algebra(C2_TABLE, field, "k[C2]")


def s3_table() -> list[list[int]]:
    elems = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}
    return [[index[tuple(a[b[i]] for i in range(3))] for b in elems] for a in elems]


def s3_group_algebra(field: Field = QQ) -> Bimonoid:
    return monoid_algebra(s3_table(), field, "k[S3]")


def idempotent_monoid_algebra(field: Field = QQ) -> Bimonoid:
    """``k[{1, e}]`` with ``e^2 = e``: a bimonoid that is not Hopf."""
    return monoid_algebra(IDEMPOTENT_TABLE, field, "k[{1,e}]")


def unit_bimonoid(field: Field = QQ) -> Bimonoid:
    return monoid_algebra([[0]], field, "k")


# Sweedler's algebra: basis 1, g, x, gx (indices 0..3).
_SW_G = {0: 0, 1: 1, 2: 0, 3: 1}   # power of g in each basis element
_SW_X = {0: 0, 1: 0, 2: 1, 3: 1}   # power of x


def _sweedler_product(a: int, b: int) -> tuple[int, int] | None:
    """``(coefficient, basis index)`` of ``a * b``, or ``None`` when zero."""
    ga, xa, gb, xb = _SW_G[a], _SW_X[a], _SW_G[b], _SW_X[b]
    if xa and xb:
        return None
    # g^ga x^xa g^gb x^xb; moving x past g costs a sign
    sign = -1 if (xa and gb) else 1
    g = (ga + gb) % 2
    x = xa + xb
    return sign, g + 2 * x


def sweedler_h4(field: Field = QQ) -> Bimonoid:
    """Sweedler's 4-dimensional Hopf algebra.

    ``g^2 = 1, x^2 = 0, xg = -gx``; ``g`` group-like, ``x`` is
    ``(1, g)``-primitive: ``Delta x = x (x) 1 + g (x) x``.
    """
    n = 4
    mu: dict[tuple[int, int], int] = {}
    for a in range(n):
        for b in range(n):
            prod = _sweedler_product(a, b)
            if prod is not None:
                sign, c = prod
                mu[(c, a * n + b)] = sign
    eta = {(0, 0): 1}
    # Delta on the generators, extended multiplicatively:
    # Delta 1 = 1(x)1, Delta g = g(x)g, Delta x = x(x)1 + g(x)x,
    # Delta gx = (g(x)g)(x(x)1 + g(x)x) = gx(x)g + 1(x)gx
    delta = {
        (0 * n + 0, 0): 1,
        (1 * n + 1, 1): 1,
        (2 * n + 0, 2): 1, (1 * n + 2, 2): 1,
        (3 * n + 1, 3): 1, (0 * n + 3, 3): 1,
    }
    eps = {(0, 0): 1, (0, 1): 1}
    x = VectObject.even(n)
    co = make_comonoid(x, Matrix.from_dict(n * n, n, delta, field),
                       Matrix.from_dict(1, n, eps, field), "H4")
    mo = make_monoid(x, Matrix.from_dict(n, n * n, mu, field),
                     Matrix.from_dict(n, 1, eta, field), "H4")
    return Bimonoid(co, mo, "symmetric", "H4")


def grouplike_comonoid(n: int, field: Field = QQ) -> Comonoid:
    """The coalgebra of an ``n``-element set: every basis vector group-like."""
    one = field.norm(1)
    delta = Matrix.from_dict(n * n, n, {(a * n + a, a): one for a in range(n)}, field)
    eps = Matrix.from_dict(1, n, {(0, a): one for a in range(n)}, field)
    return make_comonoid(VectObject.even(n), delta, eps, f"G{n}")


def divided_power_comonoid(field: Field = QQ, odd: bool = False) -> Comonoid:
    """Basis ``1, x`` with ``Delta 1 = 1(x)1``, ``Delta x = x(x)1 + 1(x)x``.

    With ``odd=True`` the primitive ``x`` is odd.
    """
    delta = {(0, 0): 1, (2, 1): 1, (1, 1): 1}
    eps = {(0, 0): 1}
    parity = (0, 1) if odd else (0, 0)
    return make_comonoid(VectObject(2, parity), Matrix.from_dict(4, 2, delta, field),
                         Matrix.from_dict(1, 2, eps, field), "D2" + ("odd" if odd else ""))


def odd_pairing_comonoid(field: Field = QQ) -> Comonoid:
    """Basis ``1`` (even), ``x`` (odd) with ``Delta 1 = 1(x)1 + x(x)x``.

    ``Delta x = x(x)1 + 1(x)x``.  Its super-braided dual picks up a sign on
    the ``x (x) x`` term.
    """
    delta = {(0, 0): 1, (3, 0): 1, (2, 1): 1, (1, 1): 1}
    eps = {(0, 0): 1}
    return make_comonoid(VectObject(2, (0, 1)), Matrix.from_dict(4, 2, delta, field),
                         Matrix.from_dict(1, 2, eps, field), "P2odd")


def bimonoid_corpus(field: Field = QQ) -> dict[str, Bimonoid]:
    return {
        "c2_group_algebra": c2_group_algebra(field),
        "s3_group_algebra": s3_group_algebra(field),
        "idempotent_monoid_algebra": idempotent_monoid_algebra(field),
        "sweedler_h4": sweedler_h4(field),
        "unit_bimonoid": unit_bimonoid(field),
    }


HOPF_MEMBERS = ("c2_group_algebra", "s3_group_algebra", "sweedler_h4", "unit_bimonoid")


def comonoid_corpus(field: Field = QQ) -> dict[str, Comonoid]:
    return {
        "unit_comonoid": unit_comonoid(field),
        "grouplike_1": grouplike_comonoid(1, field),
        "grouplike_2": grouplike_comonoid(2, field),
    }


def sign_module_c2(field: Field = QQ) -> ModuleOverBimonoid:
    """The one-dimensional module of ``k[C2]`` where the generator acts by -1."""
    h = c2_group_algebra(field)
    return make_module(h, VectObject.even(1), Matrix.from_rows([[1, -1]], field), "sign")


def module_corpus(name: str, h: Bimonoid) -> dict[str, ModuleOverBimonoid]:
    """Regular and trivial modules, plus non-free ones for ``k[C2]``."""
    out = {"regular": regular_module(h), "trivial1": trivial_module(h, 1)}
    if name == "c2_group_algebra":
        out["trivial2"] = trivial_module(h, 2)
        out["sign"] = sign_module_c2(h.field)
    return out
