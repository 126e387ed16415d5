"""The bicategory Comod(V).

Objects are comonoids, 1-cells ``M : C -> D`` are two-sided comodules with
coaction ``M -> C (x) M (x) D``, and 2-cells are coaction-preserving linear
maps.  Composition ``M <> N`` (diagrammatic order, ``N o M`` in the usual
notation) is the coreflexive equalizer of ``rho_M (x) 1`` and
``1 (x) lambda_N``.

Matrices cannot ignore associativity and unit constraints, so every
comodule built here also remembers how it was assembled: a small string
diagram of atoms (identity comodules, the biduality cups and caps, and
opaque "coupons") together with the embedding of its carrier into the
tensor product of the atom carriers.  Two parallel 1-cells whose diagrams
have the same strands and coupons are canonically isomorphic, and
:func:`structural_iso` produces that isomorphism by collapsing every
identity strand to a single atom with counits.  Associators, unitors,
interchange and snake isomorphisms all come from this one mechanism, and
each is verified to be an invertible comodule morphism before it is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (AxiomViolation, FactorizationFailure, NotInSubspace, NotInvertible,
                     ShapeMismatch, SnakeFailure)
from .linalg import Field, Matrix, SubspaceEmbedding, apply_middle, equalizer_subspace, factor_through, kron_all, mat_inverse
from .report import Report
from .structures import Comonoid, check_comonoid, dual_comonoid, tensor_comonoid, unit_comonoid
from .vect import MorphismV, VectObject, permute_rows, shuffle, tensor_all, tensor_objects

Port = tuple[int, str, int]


@dataclass(frozen=True, eq=False)
class Atom:
    kind: str                 # "id", "cap", "cup" or "coupon"
    label: str
    carrier: VectObject
    counit: Matrix | None     # counit of the carrier comonoid; None for coupons
    n_in: int
    n_out: int


@dataclass(frozen=True, eq=False)
class Diagram:
    atoms: tuple[Atom, ...]
    edges: tuple[tuple[Port, Port], ...]
    inputs: tuple[Port, ...]
    outputs: tuple[Port, ...]
    embed: Matrix             # carrier -> tensor of the atom carriers


@dataclass(frozen=True, eq=False)
class Comodule:
    src: Comonoid
    tgt: Comonoid
    carrier: VectObject
    coaction: MorphismV
    name: str = ""
    braid: str = "symmetric"
    src_legs: tuple[Comonoid, ...] = ()
    tgt_legs: tuple[Comonoid, ...] = ()
    diagram: Diagram | None = field(default=None, repr=False)
    sub: SubspaceEmbedding | None = field(default=None, repr=False)   # set on composites
    factors: tuple[Comodule, ...] = field(default=(), repr=False)     # set on tensors
    parts: tuple[Comodule, Comodule] | None = field(default=None, repr=False)   # set on composites

    def tensor_factors(self) -> tuple[Comodule, ...]:
        return self.factors or (self,)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self) -> Field:
        return self.coaction.field

    def left_coaction(self) -> Matrix:
        """``M -> C (x) M``."""
        return apply_middle(self.src.dim * self.dim, self.tgt.epsilon.mat, 1, self.coaction.mat)

    def right_coaction(self) -> Matrix:
        """``M -> M (x) D``."""
        return apply_middle(1, self.src.epsilon.mat, self.dim * self.tgt.dim, self.coaction.mat)


@dataclass(frozen=True, eq=False)
class ComoduleMorphism:
    dom: Comodule
    cod: Comodule
    mat: Matrix

    def __matmul__(self, other: ComoduleMorphism) -> ComoduleMorphism:
        """``self o other`` (apply ``other`` first)."""
        if not same_comodule(other.cod, self.dom):
            raise ShapeMismatch("2-cells are not composable")
        return ComoduleMorphism(other.dom, self.cod, self.mat @ other.mat)


# -- construction -------------------------------------------------------------

def same_comodule(a: Comodule, b: Comodule) -> bool:
    if a is b:
        return True
    return (a.src == b.src and a.tgt == b.tgt and a.carrier == b.carrier
            and a.coaction.mat == b.coaction.mat)


def _coupon_diagram(label: str, carrier: VectObject, n_in: int, n_out: int, f: Field) -> Diagram:
    atom = Atom("coupon", label, carrier, None, n_in, n_out)
    return Diagram((atom,), (), tuple((0, "in", k) for k in range(n_in)),
                   tuple((0, "out", k) for k in range(n_out)), Matrix.identity(carrier.dim, f))


def make_comodule(src: Comonoid, tgt: Comonoid, carrier: VectObject, coaction: Matrix,
                  name: str = "M", braid: str = "symmetric",
                  src_legs: tuple[Comonoid, ...] | None = None,
                  tgt_legs: tuple[Comonoid, ...] | None = None) -> Comodule:
    """A comodule treated as an opaque coupon in string diagrams."""
    src_legs = (src,) if src_legs is None else tuple(src_legs)
    tgt_legs = (tgt,) if tgt_legs is None else tuple(tgt_legs)
    cod = tensor_all([src.carrier, carrier, tgt.carrier])
    coact = MorphismV(carrier, cod, coaction)
    diagram = _coupon_diagram(name, carrier, len(src_legs), len(tgt_legs), coaction.field)
    return Comodule(src, tgt, carrier, coact, name, braid, src_legs, tgt_legs, diagram)


def check_comodule(m: Comodule) -> Report:
    c, d = m.src, m.tgt
    n = m.dim
    gamma = m.coaction.mat
    if gamma.shape != (c.dim * n * d.dim, n):
        raise ShapeMismatch(f"coaction is {gamma.nrows}x{gamma.ncols}, expected {c.dim * n * d.dim}x{n}")
    f = m.field
    one_c, one_m, one_d = (Matrix.identity(k, f) for k in (c.dim, n, d.dim))
    r = Report(f"comodule {m.name}".strip())
    r.equal("counit", kron_all([c.epsilon.mat, one_m, d.epsilon.mat]) @ gamma, one_m)
    r.equal("coassociativity",
            kron_all([one_c, gamma, one_d]) @ gamma,
            kron_all([c.delta.mat, one_m, d.delta.mat]) @ gamma)
    lam, rho = m.left_coaction(), m.right_coaction()
    r.equal("left and right coactions commute", lam.kron(one_d) @ rho, one_c.kron(rho) @ lam)
    if not m.carrier.trivially_graded or not c.carrier.trivially_graded or not d.carrier.trivially_graded:
        r.add("coaction parity-preserving", m.coaction.is_parity_preserving())
    return r


def _require(m: Comodule) -> None:
    rep = check_comodule(m)
    if not rep.passed:
        bad = rep.failures()[0]
        raise AxiomViolation(f"comodule {m.name} fails {bad.name} ({bad.detail})")


def _atom_comodule(kind: str, label: str, c: Comonoid, src: Comonoid, tgt: Comonoid,
                   coaction: Matrix, src_legs: tuple[Comonoid, ...],
                   tgt_legs: tuple[Comonoid, ...], braid: str) -> Comodule:
    f = c.field
    atom = Atom(kind, label, c.carrier, c.epsilon.mat, len(src_legs), len(tgt_legs))
    diagram = Diagram((atom,), (), tuple((0, "in", k) for k in range(len(src_legs))),
                      tuple((0, "out", k) for k in range(len(tgt_legs))),
                      Matrix.identity(c.dim, f))
    cod = tensor_all([src.carrier, c.carrier, tgt.carrier])
    return Comodule(src, tgt, c.carrier, MorphismV(c.carrier, cod, coaction), label, braid,
                    src_legs, tgt_legs, diagram)


def identity_comodule(c: Comonoid, braid: str = "symmetric", *, verify: bool = True) -> Comodule:
    """``1_C : C -> C`` with carrier ``C`` and coaction ``(delta (x) 1) delta``."""
    if verify and not check_comonoid(c).passed:
        raise AxiomViolation(f"{c.name or 'input'} is not a comonoid")
    d = c.delta.mat
    coaction = d.kron(c.identity()) @ d
    return _atom_comodule("id", f"1[{c.name}]", c, c, c, coaction, (c,), (c,), braid)


def identity_on(legs: Sequence[Comonoid], braid: str = "symmetric",
                field: Field | None = None) -> Comodule:
    """Identity 1-cell of a tensor of basic comonoids, as a tensor of atoms."""
    legs = tuple(legs)
    if not legs:
        if field is None:
            raise ShapeMismatch("identity on the unit object needs a field")
        k = unit_comonoid(field)
        one = Matrix.identity(1, k.field)
        return _atom_comodule("id", "1[I]", k, k, k, one, (), (), braid)
    out = identity_comodule(legs[0], braid)
    for leg in legs[1:]:
        out = tensor_comodules(out, identity_comodule(leg, braid))
    return out


def biduality_data(c: Comonoid, braid: str = "symmetric") -> tuple[Comodule, Comodule]:
    """``e : C (x) C° -> I`` and ``n : I -> C° (x) C``, both with carrier ``C``.

    ``e`` coacts by ``c -> c(1) (x) c(3) (x) c(2)`` (legs ``C``, ``C°``, then
    the carrier) and ``n`` by ``c -> c(2) (x) c(1) (x) c(3)`` (carrier, then
    legs ``C°``, ``C``).  Both snake composites are checked to be
    isomorphic to identity comodules.
    """
    if not check_comonoid(c).passed:
        raise AxiomViolation(f"{c.name or 'input'} is not a comonoid")
    f = c.field
    x = c.carrier
    co = dual_comonoid(c, braid)
    unit = unit_comonoid(f)
    d = c.delta.mat
    d3 = d.kron(c.identity()) @ d
    e_coact = shuffle([x, x, x], [0, 2, 1], braid, f) @ d3
    n_coact = shuffle([x, x, x], [1, 0, 2], braid, f) @ d3
    e = _atom_comodule("cap", f"e[{c.name}]", c, tensor_comonoid(c, co, braid), unit,
                       e_coact, (c, co), (), braid)
    n = _atom_comodule("cup", f"n[{c.name}]", c, unit, tensor_comonoid(co, c, braid),
                       n_coact, (), (co, c), braid)
    for m in (e, n):
        _require(m)
    for k1, k2 in snake_composites(c, e, n, braid):
        try:
            structural_iso(k1, k2)
        except (FactorizationFailure, NotInvertible) as exc:
            raise SnakeFailure(f"snake composite for {c.name} is not an identity: {exc}") from exc
    return e, n


def snake_composites(c: Comonoid, e: Comodule, n: Comodule,
                     braid: str = "symmetric") -> list[tuple[Comodule, Comodule]]:
    """Pairs (snake composite, identity) for ``C`` and ``C°``."""
    co = n.tgt_legs[0]
    one_c = identity_comodule(c, braid)
    one_co = identity_comodule(co, braid)
    s1 = compose_comodules(tensor_comodules(one_c, n), tensor_comodules(e, one_c))
    s2 = compose_comodules(tensor_comodules(n, one_co), tensor_comodules(one_co, e))
    return [(s1, one_c), (s2, one_co)]


def tensor_comodules(m: Comodule, n: Comodule) -> Comodule:
    """``M (x) N : X (x) X' -> Y (x) Y'``."""
    if m.braid != n.braid:
        raise ShapeMismatch("comodules use different braidings")
    braid = m.braid
    f = m.field
    src = tensor_comonoid(m.src, n.src, braid)
    tgt = tensor_comonoid(m.tgt, n.tgt, braid)
    objs = [m.src.carrier, m.carrier, m.tgt.carrier, n.src.carrier, n.carrier, n.tgt.carrier]
    carrier = tensor_objects(m.carrier, n.carrier)
    coaction = permute_rows(objs, [0, 3, 1, 4, 2, 5], m.coaction.mat.kron(n.coaction.mat), braid)
    diagram = None
    if m.diagram is not None and n.diagram is not None:
        off = len(m.diagram.atoms)
        dn = n.diagram
        diagram = Diagram(m.diagram.atoms + dn.atoms,
                          m.diagram.edges + tuple((_shift(a, off), _shift(b, off)) for a, b in dn.edges),
                          m.diagram.inputs + tuple(_shift(p, off) for p in dn.inputs),
                          m.diagram.outputs + tuple(_shift(p, off) for p in dn.outputs),
                          m.diagram.embed.kron(dn.embed))
    cod = tensor_all([src.carrier, carrier, tgt.carrier])
    return Comodule(src, tgt, carrier, MorphismV(carrier, cod, coaction),
                    f"({m.name}*{n.name})", braid, m.src_legs + n.src_legs,
                    m.tgt_legs + n.tgt_legs, diagram,
                    factors=m.tensor_factors() + n.tensor_factors())


def _shift(p: Port, off: int) -> Port:
    return (p[0] + off, p[1], p[2])


def compose_comodules(m: Comodule, n: Comodule, *, certify: bool = True,
                      method: str = "auto") -> Comodule:
    """``M <> N``: the equalizer of ``rho_M (x) 1_N`` and ``1_M (x) lambda_N``.

    With ``certify`` the common retraction ``1 (x) eps_D (x) 1`` of the pair
    is checked, which makes the equalizer coreflexive.

    When both sides are tensor products whose leg boundaries line up
    (``method="auto"``), the equalizer is assembled from the equalizers of
    the aligned blocks: balancing over ``D1 (x) D2`` is balancing over each
    factor separately, and kernels of ``A (x) 1`` and ``1 (x) B`` meet in
    ``ker A (x) ker B``.  The carrier basis is the same canonical echelon
    basis either way; ``method="direct"`` always solves the full fork.
    """
    if m.tgt != n.src:
        raise ShapeMismatch(f"cannot compose {m.name}: ->{m.tgt.name} with {n.name}: {n.src.name}->")
    key = (id(m), id(n), certify, method)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is m and hit[1] is n:
        return hit[2]
    blocks = _aligned_blocks(m, n) if method == "auto" else None
    if method == "auto" and n.parts is not None:
        sub, coaction = _compose_reassociated(m, n, certify)
    elif blocks is not None:
        sub, coaction = _compose_blocks(m, n, blocks, certify)
    else:
        sub, coaction = _compose_direct(m, n, certify)
    out = _finish_compose(m, n, sub, coaction)
    if len(_CACHE) > 512:
        _CACHE.clear()
    _CACHE[key] = (m, n, out)
    return out


_CACHE: dict[tuple, tuple[Comodule, Comodule, Comodule]] = {}


def _compose_direct(m: Comodule, n: Comodule, certify: bool) -> tuple[SubspaceEmbedding, Matrix]:
    f = m.field
    c, d, e = m.src, m.tgt, n.tgt
    one_m = Matrix.identity(m.dim, f)
    one_n = Matrix.identity(n.dim, f)
    fork_l = m.right_coaction().kron(one_n)
    fork_r = one_m.kron(n.left_coaction())
    retraction = kron_all([one_m, d.epsilon.mat, one_n]) if certify else None
    sub = equalizer_subspace(fork_l, fork_r, retraction)
    outer = m.left_coaction().kron(n.right_coaction()) @ sub.basis       # -> C M N E
    target = SubspaceEmbedding(c.dim * m.dim * n.dim * e.dim,
                               kron_all([Matrix.identity(c.dim, f), sub.basis,
                                         Matrix.identity(e.dim, f)]),
                               _kron_pivots(c.dim, sub, m.dim * n.dim, e.dim))
    try:
        coaction = factor_through(target, outer)
    except NotInSubspace as exc:
        raise FactorizationFailure(f"coaction of {m.name}<>{n.name} does not restrict to the equalizer") from exc
    return sub, coaction


def _transport(m: Comodule, n: Comodule, image: Matrix, known: Comodule
               ) -> tuple[SubspaceEmbedding, Matrix]:
    """Canonical basis and coaction of ``M <> N`` from an isomorphic copy.

    ``image`` has the columns of ``known``'s basis written in ``M (x) N``
    coordinates; ``known`` supplies the coaction in those coordinates.
    """
    sub = SubspaceEmbedding.span(image)
    u = factor_through(sub, image)
    coaction = apply_middle(m.src.dim, u, n.tgt.dim, known.coaction.mat @ mat_inverse(u))
    return sub, coaction


def _compose_reassociated(m: Comodule, n: Comodule, certify: bool) -> tuple[SubspaceEmbedding, Matrix]:
    # M <> (N1 <> N2) and (M <> N1) <> N2 are the same subspace of M N1 N2
    n1, n2 = n.parts
    f = m.field
    left = compose_comodules(m, n1, certify=certify)
    three = compose_comodules(left, n2, certify=certify)
    b3 = left.sub.basis.kron(Matrix.identity(n2.dim, f)) @ three.sub.basis
    emb = SubspaceEmbedding(m.dim * n1.dim * n2.dim,
                            Matrix.identity(m.dim, f).kron(n.sub.basis),
                            _kron_pivots(m.dim, n.sub, n1.dim * n2.dim, 1))
    try:
        image = factor_through(emb, b3)
    except NotInSubspace as exc:
        raise FactorizationFailure(f"reassociated composite {m.name}<>{n.name} is not balanced") from exc
    return _transport(m, n, image, three)


def _aligned_blocks(m: Comodule, n: Comodule) -> list[tuple[tuple[Comodule, ...], tuple[Comodule, ...]]] | None:
    mf, nf = m.tensor_factors(), n.tensor_factors()
    if len(mf) < 2 or len(nf) < 2:
        return None
    if len(m.tgt_legs) != len(n.src_legs) or any(a != b for a, b in zip(m.tgt_legs, n.src_legs)):
        return None

    def cuts(parts: Sequence[Comodule], legs: str) -> dict[int, int]:
        out, acc = {}, 0
        for i, x in enumerate(parts):
            acc += len(getattr(x, legs))
            out.setdefault(acc, i + 1)     # first factor boundary at this leg count
        return out

    mc, nc = cuts(mf, "tgt_legs"), cuts(nf, "src_legs")
    total = len(m.tgt_legs)
    common = sorted(b for b in mc if b in nc and 0 < b < total)
    if not common:
        return None
    blocks = []
    mi = ni = 0
    for b in common + [total]:
        mj = mc[b] if b < total else len(mf)
        nj = nc[b] if b < total else len(nf)
        blocks.append((mf[mi:mj], nf[ni:nj]))
        mi, ni = mj, nj
    if any(not bm or not bn for bm, bn in blocks):
        return None
    return blocks


def _tensor_all(parts: Sequence[Comodule]) -> Comodule:
    out = parts[0]
    for x in parts[1:]:
        out = tensor_comodules(out, x)
    return out


def _compose_blocks(m: Comodule, n: Comodule, blocks, certify: bool) -> tuple[SubspaceEmbedding, Matrix]:
    f = m.field
    pieces = []
    for bm, bn in blocks:
        pm, pn = _tensor_all(bm), _tensor_all(bn)
        pieces.append((pm, pn, compose_comodules(pm, pn, certify=certify)))
    joint = _tensor_all([r for _, _, r in pieces])
    # embed (x)_b Eq_b into M (x) N: kron of block bases, then move every
    # M-block in front of every N-block
    k = len(pieces)
    objs = []
    for pm, pn, _ in pieces:
        objs += [pm.carrier, pn.carrier]
    perm = [2 * b for b in range(k)] + [2 * b + 1 for b in range(k)]
    q = permute_rows(objs, perm, kron_all([r.sub.basis for _, _, r in pieces], f), m.braid)
    return _transport(m, n, q, joint)


def _finish_compose(m: Comodule, n: Comodule, sub: SubspaceEmbedding, coaction: Matrix) -> Comodule:
    f = m.field
    c, e = m.src, n.tgt
    carrier = VectObject(sub.dim, _sub_parity(sub, tensor_objects(m.carrier, n.carrier)))
    diagram = None
    if (m.diagram is not None and n.diagram is not None
            and len(m.tgt_legs) == len(n.src_legs)
            and all(a == b for a, b in zip(m.tgt_legs, n.src_legs))):
        off = len(m.diagram.atoms)
        dn = n.diagram
        glue = tuple((p, _shift(q, off)) for p, q in zip(m.diagram.outputs, dn.inputs))
        diagram = Diagram(m.diagram.atoms + dn.atoms,
                          m.diagram.edges + tuple((_shift(a, off), _shift(b, off)) for a, b in dn.edges) + glue,
                          m.diagram.inputs, tuple(_shift(p, off) for p in dn.outputs),
                          m.diagram.embed.kron(dn.embed) @ sub.basis)
    name = f"{m.name}<>{n.name}"
    if diagram is None:
        # opaque composite: it becomes a coupon of its own
        diagram = _coupon_diagram(name, carrier, len(m.src_legs), len(n.tgt_legs), f)
    cod = tensor_all([c.carrier, carrier, e.carrier])
    return Comodule(c, e, carrier, MorphismV(carrier, cod, coaction), name,
                    m.braid, m.src_legs, n.tgt_legs, diagram, sub, parts=(m, n))


def _kron_pivots(left: int, sub: SubspaceEmbedding, mid: int, right: int) -> tuple[int, ...]:
    """Pivot rows of ``1_left (x) basis (x) 1_right``, in column order."""
    return tuple(a * mid * right + p * right + b
                 for a in range(left) for p in sub.pivots for b in range(right))


def _sub_parity(sub: SubspaceEmbedding, ambient: VectObject) -> tuple[int, ...]:
    # a basis vector of a graded subspace spanned by homogeneous vectors is
    # homogeneous; its parity is that of its pivot row
    return tuple(ambient.parity[p] for p in sub.pivots)


# -- 2-cells ------------------------------------------------------------------

def check_comodule_morphism(t: ComoduleMorphism) -> Report:
    dom, cod = t.dom, t.cod
    if dom.src != cod.src or dom.tgt != cod.tgt:
        raise ShapeMismatch("2-cell between comodules with different ends")
    if t.mat.shape != (cod.dim, dom.dim):
        raise ShapeMismatch(f"2-cell is {t.mat.nrows}x{t.mat.ncols}, expected {cod.dim}x{dom.dim}")
    f = dom.field
    lift = kron_all([Matrix.identity(dom.src.dim, f), t.mat, Matrix.identity(dom.tgt.dim, f)])
    r = Report("comodule morphism")
    r.equal("intertwines coactions", lift @ dom.coaction.mat, cod.coaction.mat @ t.mat)
    return r


def is_invertible_morphism(t: ComoduleMorphism) -> bool:
    if t.mat.nrows != t.mat.ncols:
        return False
    try:
        mat_inverse(t.mat)
    except NotInvertible:
        return False
    return check_comodule_morphism(t).passed


def identity_cell(m: Comodule) -> ComoduleMorphism:
    return ComoduleMorphism(m, m, Matrix.identity(m.dim, m.field))


def inverse_cell(t: ComoduleMorphism) -> ComoduleMorphism:
    return ComoduleMorphism(t.cod, t.dom, mat_inverse(t.mat))


def tensor_cells(s: ComoduleMorphism, t: ComoduleMorphism,
                 dom: Comodule | None = None, cod: Comodule | None = None) -> ComoduleMorphism:
    dom = dom or tensor_comodules(s.dom, t.dom)
    cod = cod or tensor_comodules(s.cod, t.cod)
    return ComoduleMorphism(dom, cod, s.mat.kron(t.mat))


def box_cells(s: ComoduleMorphism, t: ComoduleMorphism,
              dom: Comodule | None = None, cod: Comodule | None = None) -> ComoduleMorphism:
    """Horizontal composite ``s <> t : M <> N -> M' <> N'``."""
    dom = dom or compose_comodules(s.dom, t.dom, certify=False)
    cod = cod or compose_comodules(s.cod, t.cod, certify=False)
    h = s.mat.kron(t.mat) @ dom.sub.basis
    try:
        mat = factor_through(cod.sub, h)
    except NotInSubspace as exc:
        raise FactorizationFailure("horizontal composite does not land in the equalizer") from exc
    return ComoduleMorphism(dom, cod, mat)


# -- structural isomorphisms -------------------------------------------------

class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[object, object] = {}

    def find(self, a: object) -> object:
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: object, b: object) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=repr)] = min(ra, rb, key=repr)


@dataclass(frozen=True)
class _Strands:
    keep: tuple[int, ...]          # kept atoms, in atom order
    keys: tuple[str, ...]          # sort key of each kept atom


def _analyse(dg: Diagram) -> _Strands:
    uf = _UnionFind()
    for i, a in enumerate(dg.atoms):
        if a.kind == "coupon":
            continue
        uf.find(("atom", i))
        for k in range(a.n_in):
            uf.union(("atom", i), (i, "in", k))
        for k in range(a.n_out):
            uf.union(("atom", i), (i, "out", k))
    for p, q in dg.edges:
        uf.union(p, q)
    boundary: dict[Port, tuple] = {}
    for idx, p in enumerate(dg.inputs):
        boundary[p] = ("in", idx)
    for idx, p in enumerate(dg.outputs):
        boundary[p] = ("out", idx)
    ports: list[Port] = []
    for i, a in enumerate(dg.atoms):
        ports += [(i, "in", k) for k in range(a.n_in)] + [(i, "out", k) for k in range(a.n_out)]
    members: dict[object, list[Port]] = {}
    for p in ports:
        members.setdefault(uf.find(p), []).append(p)

    coupon_keys: dict[int, object] = {}
    busy: set[int] = set()

    def endpoint(p: Port) -> tuple:
        if p in boundary:
            return ("b",) + boundary[p]
        i, d, k = p
        if dg.atoms[i].kind == "coupon":
            return ("c", coupon_key(i), d, k)
        return ()

    def coupon_key(i: int) -> object:
        if i in coupon_keys:
            return coupon_keys[i]
        if i in busy:
            return ("loop", dg.atoms[i].label)
        busy.add(i)
        src = []
        for k in range(dg.atoms[i].n_in):
            p = (i, "in", k)
            others = [endpoint(q) for q in members[uf.find(p)] if q != p]
            if p in boundary:
                others.append(("b",) + boundary[p])
            src.append(tuple(sorted((e for e in others if e), key=repr)))
        # output boundary ports separate parallel copies with no inputs
        sinks = []
        for k in range(dg.atoms[i].n_out):
            p = (i, "out", k)
            ends = [("b",) + boundary[q] for q in members[uf.find(p)] if q in boundary]
            sinks.append(tuple(sorted(ends, key=repr)))
        busy.discard(i)
        key = (dg.atoms[i].label, tuple(src), tuple(sinks))
        coupon_keys[i] = key
        return key

    keep: list[int] = []
    keys: list[str] = []
    seen_roots: set[object] = set()
    for i, a in enumerate(dg.atoms):
        if a.kind == "coupon":
            keep.append(i)
            keys.append(repr(("coupon", coupon_key(i))))
            continue
        root = uf.find(("atom", i))
        if root in seen_roots:
            continue
        seen_roots.add(root)
        ends = [endpoint(p) for p in members.get(root, [])]
        if any(e and e[0] == "c" for e in ends) or not any(ends):
            continue       # strand absorbed by a coupon, or a closed loop
        keep.append(i)
        keys.append(repr(("strand", tuple(sorted((e for e in ends if e), key=repr)))))
    if len(set(keys)) != len(keys):
        raise FactorizationFailure("diagram has indistinguishable components")
    return _Strands(tuple(keep), tuple(keys))


def collapse(m: Comodule) -> tuple[Matrix, tuple[str, ...], list[VectObject]]:
    """Map the carrier of ``m`` onto the tensor of its kept atoms, in key order."""
    dg = m.diagram
    if dg is None:
        raise FactorizationFailure(f"{m.name} has no recorded structure")
    info = _analyse(dg)
    f = m.field
    kept = set(info.keep)
    factors = []
    for i, a in enumerate(dg.atoms):
        factors.append(Matrix.identity(a.carrier.dim, f) if i in kept else a.counit)
    order = sorted(range(len(info.keep)), key=lambda t: info.keys[t])
    objs = [dg.atoms[i].carrier for i in info.keep]
    perm = shuffle(objs, order, m.braid, f) if objs else Matrix.identity(1, f)
    mat = perm @ kron_all(factors, f) @ dg.embed
    return mat, tuple(info.keys[t] for t in order), [objs[t] for t in order]


def coordinates(basis: Matrix, h: Matrix) -> Matrix:
    """The unique ``x`` with ``basis @ x == h`` for injective ``basis``."""
    span = SubspaceEmbedding.span(basis)
    try:
        y = factor_through(span, h)
        z = factor_through(span, basis)
        return mat_inverse(z) @ y
    except (NotInSubspace, NotInvertible) as exc:
        raise FactorizationFailure("map does not factor through the given basis") from exc


def structural_iso(k1: Comodule, k2: Comodule, *, verify: bool = True) -> ComoduleMorphism:
    """The canonical isomorphism between two structurally equal 1-cells."""
    if k1.src != k2.src or k1.tgt != k2.tgt:
        raise ShapeMismatch(f"{k1.name} and {k2.name} are not parallel")
    if not _needs_iso(k1, k2):
        return identity_cell(k1)
    c1, keys1, _ = collapse(k1)
    c2, keys2, _ = collapse(k2)
    if keys1 != keys2:
        raise FactorizationFailure(f"{k1.name} and {k2.name} have different strands")
    try:
        mat = coordinates(c2, c1)
    except FactorizationFailure as exc:
        raise FactorizationFailure(f"no structural isomorphism {k1.name} -> {k2.name}") from exc
    t = ComoduleMorphism(k1, k2, mat)
    if verify and not is_invertible_morphism(t):
        raise FactorizationFailure(f"structural map {k1.name} -> {k2.name} is not an isomorphism")
    return t


def constraint_isos(m: Comodule, n: Comodule, q: Comodule
                    ) -> tuple[ComoduleMorphism, ComoduleMorphism, ComoduleMorphism]:
    """``(M<>N)<>Q -> M<>(N<>Q)``, ``1<>M -> M`` and ``M<>1 -> M``."""
    assoc = structural_iso(compose_comodules(compose_comodules(m, n), q),
                           compose_comodules(m, compose_comodules(n, q)))
    left = structural_iso(compose_comodules(identity_on(m.src_legs, m.braid, m.field), m), m)
    right = structural_iso(compose_comodules(m, identity_on(m.tgt_legs, m.braid, m.field)), m)
    return assoc, left, right


def _needs_iso(a: Comodule, b: Comodule) -> bool:
    # equal coactions do not imply equal wiring, so diagrams always get an iso
    if a is b:
        return False
    if a.diagram is not None and b.diagram is not None:
        return True
    return not same_comodule(a, b)


def chain(cells: Sequence[ComoduleMorphism]) -> ComoduleMorphism:
    """Vertical composite of ``cells`` in order, conforming ends with structural isos."""
    out = cells[0]
    for t in cells[1:]:
        if _needs_iso(out.cod, t.dom):
            out = structural_iso(out.cod, t.dom) @ out
        out = t @ out
    return out


def conform(t: ComoduleMorphism, dom: Comodule, cod: Comodule) -> ComoduleMorphism:
    """``t`` precomposed and postcomposed with structural isos to the given ends."""
    out = t
    if _needs_iso(dom, t.dom):
        out = out @ structural_iso(dom, t.dom)
    if _needs_iso(t.cod, cod):
        out = structural_iso(t.cod, cod) @ out
    return out
