"""Monoidales (pseudomonoids) in Comod(V), in particular ``C° (x) C``.

A monoidale consists of an object ``E``, 1-cells ``p : E (x) E -> E`` and
``j : I -> E``, and invertible 2-cells

    alpha    : (p (x) 1) <> p  =>  (1 (x) p) <> p
    lambda_c : (j (x) 1) <> p  =>  1_E
    rho_c    : (1 (x) j) <> p  =>  1_E

subject to the pentagon and triangle equations.  Composites are written
in diagrammatic order (``<>``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .comod import (Comodule, ComoduleMorphism, biduality_data, box_cells, chain,
                    check_comodule, compose_comodules, conform, identity_cell,
                    identity_comodule, identity_on, is_invertible_morphism, structural_iso,
                    tensor_cells, tensor_comodules)
from .errors import AxiomViolation, HopfError
from .report import Report
from .structures import Comonoid, check_comonoid, dual_comonoid, tensor_comonoid


@dataclass(frozen=True, eq=False)
class MonoidaleData:
    object: Comonoid
    legs: tuple[Comonoid, ...]
    p: Comodule
    j: Comodule
    alpha: ComoduleMorphism
    lambda_c: ComoduleMorphism
    rho_c: ComoduleMorphism
    braid: str = "symmetric"
    base: Comonoid | None = None

    def unit_cell(self) -> Comodule:
        return identity_on(self.legs, self.braid, self.object.field)


def monoidale_constraints(p: Comodule, j: Comodule, legs: tuple[Comonoid, ...],
                          braid: str) -> tuple[ComoduleMorphism, ComoduleMorphism, ComoduleMorphism]:
    one = identity_on(legs, braid, p.field)
    alpha = structural_iso(compose_comodules(tensor_comodules(p, one), p),
                           compose_comodules(tensor_comodules(one, p), p))
    lam = structural_iso(compose_comodules(tensor_comodules(j, one), p), one)
    rho = structural_iso(compose_comodules(tensor_comodules(one, j), p), one)
    return alpha, lam, rho


def enveloping_monoidale(c: Comonoid, braid: str = "symmetric") -> MonoidaleData:
    """``E = C° (x) C`` with ``p = 1 (x) e (x) 1`` and ``j = n``."""
    if not check_comonoid(c).passed:
        raise AxiomViolation(f"{c.name or 'input'} is not a comonoid")
    co = dual_comonoid(c, braid)
    e, n = biduality_data(c, braid)
    p = tensor_comodules(tensor_comodules(identity_comodule(co, braid), e),
                         identity_comodule(c, braid))
    legs = (co, c)
    alpha, lam, rho = monoidale_constraints(p, n, legs, braid)
    obj = tensor_comonoid(co, c, braid)
    return MonoidaleData(obj, legs, p, n, alpha, lam, rho, braid, c)


def _pentagon(m: MonoidaleData) -> tuple[ComoduleMorphism, ComoduleMorphism]:
    p, a = m.p, m.alpha
    one = m.unit_cell()
    t = tensor_comodules
    p11 = t(t(p, one), one)
    one_p1 = t(t(one, p), one)
    oneone_p = t(t(one, one), p)
    # path A: alpha whiskered by (p (x) 1 (x) 1), interchange, alpha whiskered by (1 (x) 1 (x) p)
    a1 = box_cells(identity_cell(p11), a)
    a2 = box_cells(identity_cell(oneone_p), a)
    # path B: (alpha (x) 1) <> p, then (1 (x) p (x) 1) <> alpha, then (1 (x) alpha) <> p
    b1 = box_cells(tensor_cells(a, identity_cell(one)), identity_cell(p))
    b2 = box_cells(identity_cell(one_p1), a)
    b3 = box_cells(tensor_cells(identity_cell(one), a), identity_cell(p))
    path_a = chain([a1, a2])
    path_b = chain([b1, b2, b3])
    return path_a, conform(path_b, path_a.dom, path_a.cod)


def _triangle(m: MonoidaleData) -> tuple[ComoduleMorphism, ComoduleMorphism]:
    p, j = m.p, m.j
    one = m.unit_cell()
    t = tensor_comodules
    one_j_one = t(t(one, j), one)
    x1 = box_cells(identity_cell(one_j_one), m.alpha)
    x2 = box_cells(tensor_cells(identity_cell(one), m.lambda_c), identity_cell(p))
    via_alpha = chain([x1, x2])
    y = box_cells(tensor_cells(m.rho_c, identity_cell(one)), identity_cell(p))
    via_alpha = conform(via_alpha, via_alpha.dom, p)
    return via_alpha, conform(y, via_alpha.dom, p)


def check_monoidale(m: MonoidaleData) -> Report:
    r = Report("monoidale")
    pr = check_comodule(m.p)
    r.extend(pr, "p: ")
    jr = check_comodule(m.j)
    r.extend(jr, "j: ")
    if not (pr.passed and jr.passed):
        r.add("coherence", False, "skipped: p or j is not a comodule")
        return r
    for name, cell in (("alpha", m.alpha), ("lambda", m.lambda_c), ("rho", m.rho_c)):
        r.add(f"{name} invertible comodule morphism", is_invertible_morphism(cell))
    try:
        lhs, rhs = _pentagon(m)
        r.equal("pentagon", lhs.mat, rhs.mat)
        lhs, rhs = _triangle(m)
        r.equal("triangle", lhs.mat, rhs.mat)
    except HopfError as exc:
        r.add("coherence", False, f"{type(exc).__name__}: {exc}")
    return r
