"""Quantum categories and quantum groupoids in V.

A quantum category is a comonoid ``C`` with a monoidal comonad ``g`` on the
monoidale ``E = C° (x) C`` of Comod(V); it is a quantum groupoid when the
comonad is Hopf, i.e. when the pasted 2-cell

    (1 (x) g) <> (g (x) 1) <> p
        == (delta (x) 1) ==>  (g (x) 1) <> (g (x) g) <> p
        == 1 <> phi ==>       (g (x) 1) <> p <> g

is invertible.  Composites are in diagrammatic order; every equation is
evaluated modulo the structural isomorphisms of :mod:`comod`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .comod import (Comodule, ComoduleMorphism, box_cells, chain, check_comodule,
                    check_comodule_morphism, compose_comodules, conform, coordinates,
                    identity_cell, make_comodule, structural_iso, tensor_cells,
                    tensor_comodules)
from .errors import AxiomViolation, HopfError, NotInvertible
from .linalg import Matrix, mat_inverse
from .monoidale import MonoidaleData, check_monoidale, enveloping_monoidale
from .report import Report
from .structures import Bimonoid, Comonoid, check_bimonoid, unit_comonoid
from .vect import MorphismV


@dataclass(frozen=True, eq=False)
class QuantumCategoryData:
    base: Comonoid
    monoidale: MonoidaleData
    g: Comodule
    comult: ComoduleMorphism     # g => g <> g
    counit: ComoduleMorphism     # g => 1_E
    phi: ComoduleMorphism        # (g (x) g) <> p => p <> g
    phi0: ComoduleMorphism       # j => j <> g
    name: str = ""


@dataclass
class Verdict:
    is_quantum_category: bool
    is_quantum_groupoid: bool
    hopf_matrix: MorphismV | None
    diagnostics: Report = field(default_factory=lambda: Report("quantum groupoid"))


def from_bimonoid(h: Bimonoid) -> QuantumCategoryData:
    """A bimonoid as a monoidal comonad on the trivial monoidale ``k° (x) k``."""
    rep = check_bimonoid(h)
    if not rep.passed:
        bad = rep.failures()[0]
        raise AxiomViolation(f"{h.name or 'input'} is not a bimonoid: {bad.name}")
    f = h.field
    k = unit_comonoid(f)
    mon = enveloping_monoidale(k, h.braiding)
    e_obj, legs = mon.object, mon.legs
    # E is one-dimensional, so E (x) H (x) E = H and the coaction is trivial
    g = make_comodule(e_obj, e_obj, h.carrier, Matrix.identity(h.dim, f), "g", h.braiding,
                      legs, legs)
    gg = compose_comodules(g, g)
    comult = ComoduleMorphism(g, gg, coordinates(gg.diagram.embed, h.delta))
    counit = ComoduleMorphism(g, mon.unit_cell(), h.epsilon)
    src = compose_comodules(tensor_comodules(g, g), mon.p)
    tgt = compose_comodules(mon.p, g)
    phi = ComoduleMorphism(src, tgt, coordinates(tgt.diagram.embed, h.mu @ src.diagram.embed))
    jg = compose_comodules(mon.j, g)
    phi0 = ComoduleMorphism(mon.j, jg, coordinates(jg.diagram.embed, h.eta))
    return QuantumCategoryData(k, mon, g, comult, counit, phi, phi0, h.name)


def identity_comonad(mon: MonoidaleData) -> QuantumCategoryData:
    """The identity comonad ``1_E`` with all structure cells canonical."""
    g = mon.unit_cell()
    gg = compose_comodules(g, g)
    comult = structural_iso(g, gg)
    counit = identity_cell(g)
    phi = structural_iso(compose_comodules(tensor_comodules(g, g), mon.p),
                         compose_comodules(mon.p, g))
    phi0 = structural_iso(mon.j, compose_comodules(mon.j, g))
    base = mon.base if mon.base is not None else mon.legs[-1]
    return QuantumCategoryData(base, mon, g, comult, counit, phi, phi0, "identity")


def _cells(q: QuantumCategoryData) -> dict[str, tuple[ComoduleMorphism, ComoduleMorphism]]:
    """Both sides of every comonad / monoidal-comonad equation."""
    g, mon = q.g, q.monoidale
    p, j = mon.p, mon.j
    one = mon.unit_cell()
    t = tensor_comodules
    idg, idp, idj, id1 = (identity_cell(x) for x in (g, p, j, one))
    d, e, phi, phi0 = q.comult, q.counit, q.phi, q.phi0
    out: dict[str, tuple[ComoduleMorphism, ComoduleMorphism]] = {}

    def pair(name: str, lhs: ComoduleMorphism, rhs: ComoduleMorphism,
             dom: Comodule | None = None, cod: Comodule | None = None) -> None:
        dom = dom or lhs.dom
        cod = cod or lhs.cod
        out[name] = (conform(lhs, dom, cod), conform(rhs, dom, cod))

    # comonad
    pair("comonad coassociativity", chain([d, box_cells(d, idg)]), chain([d, box_cells(idg, d)]))
    pair("comonad left counit", chain([d, box_cells(e, idg)]), idg, g, g)
    pair("comonad right counit", chain([d, box_cells(idg, e)]), idg, g, g)

    # (p, phi) and (j, phi0) are comonad morphisms
    gg = t(g, g)
    lhs = chain([phi, box_cells(idp, d)])
    rhs = chain([box_cells(tensor_cells(d, d), idp),
                 box_cells(identity_cell(gg), phi),
                 box_cells(phi, idg)])
    pair("phi respects comultiplication", lhs, rhs)
    pair("phi respects counit", chain([phi, box_cells(idp, e)]),
         box_cells(tensor_cells(e, e), idp), phi.dom, p)
    pair("phi0 respects comultiplication", chain([phi0, box_cells(idj, d)]),
         chain([phi0, box_cells(phi0, idg)]))
    pair("phi0 respects counit", chain([phi0, box_cells(idj, e)]), idj, j, j)

    # monoidal-morphism axioms
    p1, onep = t(p, one), t(one, p)
    lhs = chain([box_cells(tensor_cells(phi, idg), idp),
                 box_cells(identity_cell(p1), phi),
                 box_cells(mon.alpha, idg)])
    rhs = chain([box_cells(identity_cell(t(gg, g)), mon.alpha),
                 box_cells(tensor_cells(idg, phi), idp),
                 box_cells(identity_cell(onep), phi)])
    pair("phi associativity", lhs, rhs)
    j1, onej = t(j, one), t(one, j)
    lhs = chain([box_cells(tensor_cells(phi0, idg), idp),
                 box_cells(identity_cell(j1), phi),
                 box_cells(mon.lambda_c, idg)])
    rhs = box_cells(idg, mon.lambda_c)
    pair("phi left unit", lhs, rhs, lhs.dom, g)
    lhs = chain([box_cells(tensor_cells(idg, phi0), idp),
                 box_cells(identity_cell(onej), phi),
                 box_cells(mon.rho_c, idg)])
    rhs = box_cells(idg, mon.rho_c)
    pair("phi right unit", lhs, rhs, lhs.dom, g)
    return out


def check_quantum_category(q: QuantumCategoryData, *, include_monoidale: bool = True) -> Report:
    r = Report(f"quantum category {q.name}".strip())
    if include_monoidale:
        r.extend(check_monoidale(q.monoidale), "monoidale: ")
    gr = check_comodule(q.g)
    r.extend(gr, "g: ")
    for name, cell in (("comult", q.comult), ("counit", q.counit), ("phi", q.phi), ("phi0", q.phi0)):
        try:
            r.add(f"{name} is a comodule morphism", check_comodule_morphism(cell).passed)
        except HopfError as exc:
            r.add(f"{name} is a comodule morphism", False, str(exc))
    if not r.passed:
        r.add("axioms", False, "skipped: structure cells are malformed")
        return r
    try:
        for name, (lhs, rhs) in _cells(q).items():
            r.equal(name, lhs.mat, rhs.mat)
    except HopfError as exc:
        r.add("axioms", False, f"{type(exc).__name__}: {exc}")
    return r


def hopf_pasting_cell(q: QuantumCategoryData) -> ComoduleMorphism:
    g, mon = q.g, q.monoidale
    p = mon.p
    one = mon.unit_cell()
    t = tensor_comodules
    g1, oneg = t(g, one), t(one, g)
    src = compose_comodules(compose_comodules(oneg, g1), p)
    step1 = box_cells(box_cells(identity_cell(oneg), tensor_cells(q.comult, identity_cell(one))),
                      identity_cell(p))
    step2 = box_cells(identity_cell(g1), q.phi)
    cell = chain([step1, step2])
    return conform(cell, src, cell.cod)


def hopf_pasting(q: QuantumCategoryData) -> MorphismV:
    """The pasted 2-cell as a matrix between the two composite carriers."""
    cell = hopf_pasting_cell(q)
    return MorphismV(cell.dom.carrier, cell.cod.carrier, cell.mat)


def is_quantum_groupoid(q: QuantumCategoryData) -> Verdict:
    diag = Report(f"quantum groupoid {q.name}".strip())
    try:
        qc = check_quantum_category(q)
    except HopfError as exc:
        qc = Report("quantum category")
        qc.add("evaluation", False, f"{type(exc).__name__}: {exc}")
    diag.extend(qc)
    hopf = None
    invertible = False
    try:
        hopf = hopf_pasting(q)
        m = hopf.mat
        if m.nrows != m.ncols:
            diag.add("hopf pasting invertible", False, f"carriers differ: {m.nrows} vs {m.ncols}")
        else:
            try:
                diag.certificates["hopf inverse"] = mat_inverse(m)
                invertible = True
            except NotInvertible:
                pass
            diag.add("hopf pasting invertible", invertible,
                     "" if invertible else f"rank {m.rank()} < {m.nrows}")
    except HopfError as exc:
        diag.add("hopf pasting invertible", False, f"{type(exc).__name__}: {exc}")
    return Verdict(qc.passed, qc.passed and invertible, hopf, diag)
