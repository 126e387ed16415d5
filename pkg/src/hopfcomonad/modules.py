"""Modules over a bimonoid ``H`` (algebras for the monad ``H (x) -``).

The interesting operation is :func:`lift_internal_hom`: for Hopf ``H`` the
linear-map space ``Hom(a, b)`` carries a unique action making evaluation
``a (x) Hom(a, b) -> b`` a module map.  The action is found by solving the
defining equation

    beta o (1_H (x) ev) = ev o (alpha (x) rho) o psi_{a, Hom(a,b)}

as a linear system in the entries of ``rho``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomViolation, Inconsistent, NotHopf, NotInSubspace, ShapeMismatch
from .fusion import is_right_hopf
from .linalg import Matrix, solve
from .report import Report
from .structures import Bimonoid
from .vect import UNIT, MorphismV, VectObject, internal_hom, shuffle, tensor_objects


@dataclass(frozen=True)
class ModuleOverBimonoid:
    bimonoid: Bimonoid
    carrier: VectObject
    action: MorphismV
    name: str = ""

    @property
    def dim(self) -> int:
        return self.carrier.dim


@dataclass(frozen=True)
class LiftedHom:
    carrier: VectObject
    rho: MorphismV
    ev: MorphismV

    def as_module(self, h: Bimonoid) -> ModuleOverBimonoid:
        return ModuleOverBimonoid(h, self.carrier, self.rho, "hom")


def make_module(h: Bimonoid, carrier: VectObject, action: Matrix, name: str = "") -> ModuleOverBimonoid:
    return ModuleOverBimonoid(h, carrier, MorphismV(tensor_objects(h.carrier, carrier), carrier, action), name)


def check_module(m: ModuleOverBimonoid) -> Report:
    h = m.bimonoid
    n, d = h.dim, m.dim
    alpha = m.action.mat
    if alpha.shape != (d, n * d):
        raise ShapeMismatch(f"action is {alpha.nrows}x{alpha.ncols}, expected {d}x{n * d}")
    one_a = Matrix.identity(d, h.field)
    one_h = Matrix.identity(n, h.field)
    r = Report(f"module {m.name}".strip())
    r.equal("associativity", alpha @ h.mu.kron(one_a), alpha @ one_h.kron(alpha))
    r.equal("unit", alpha @ h.eta.kron(one_a), one_a)
    if not m.carrier.trivially_graded:
        r.add("action parity-preserving", m.action.is_parity_preserving())
    return r


def regular_module(h: Bimonoid) -> ModuleOverBimonoid:
    return make_module(h, h.carrier, h.mu, "regular")


def trivial_module(h: Bimonoid, dim: int) -> ModuleOverBimonoid:
    carrier = VectObject.even(dim)
    action = h.epsilon.kron(Matrix.identity(dim, h.field))
    return make_module(h, carrier, action, f"trivial{dim}")


def module_fusion(m: ModuleOverBimonoid, y: VectObject = UNIT, *, verify: bool = True) -> MorphismV:
    """``H (x) a (x) y -> a (x) H (x) y``, ``h (x) v (x) w -> alpha(h(1) (x) v) (x) h(2) (x) w``."""
    if verify and not check_module(m).passed:
        raise AxiomViolation(f"module {m.name} fails its axioms")
    h = m.bimonoid
    f = h.field
    x, a = h.carrier, m.carrier
    one_h = Matrix.identity(x.dim, f)
    one_a = Matrix.identity(a.dim, f)
    one_y = Matrix.identity(y.dim, f)
    swap = shuffle([x, x, a], [0, 2, 1], h.braiding, f)
    core = m.action.mat.kron(one_h) @ swap @ h.delta.kron(one_a)
    mat = core.kron(one_y)
    return MorphismV(tensor_objects(tensor_objects(x, a), y),
                     tensor_objects(tensor_objects(a, x), y), mat)


def _psi(h: Bimonoid, a: VectObject, z: VectObject) -> Matrix:
    """Opmonoidal structure ``H (x) a (x) z -> H (x) a (x) H (x) z``."""
    f = h.field
    x = h.carrier
    swap = shuffle([x, x, a, z], [0, 2, 1, 3], h.braiding, f)
    return swap @ h.delta.kron(Matrix.identity(a.dim * z.dim, f))


def defining_sides(am: ModuleOverBimonoid, bm: ModuleOverBimonoid, hom: VectObject,
                   ev: Matrix, rho: Matrix) -> tuple[Matrix, Matrix]:
    """Both sides of the defining equation, as maps ``H (x) a (x) Hom -> b``."""
    h = am.bimonoid
    f = h.field
    lhs = bm.action.mat @ Matrix.identity(h.dim, f).kron(ev)
    rhs = ev @ am.action.mat.kron(rho) @ _psi(h, am.carrier, hom)
    return lhs, rhs


def lift_internal_hom(am: ModuleOverBimonoid, bm: ModuleOverBimonoid) -> LiftedHom:
    """The unique action on ``Hom(a, b)`` making ``ev`` a module morphism.

    Writing the unknown action as ``rho[(i, j), (h', f)]`` (coefficient of
    the matrix unit ``e_ij`` in ``rho(h' (x) f)``), the defining equation at
    output ``b_i``, input ``h (x) a_k (x) f`` reads

        sum_{j, h'} F[(j, h'), (h, k)] rho[(i, j), (h', f)] = (beta(h (x) f(a_k)))_i

    where ``F`` is the module fusion map of ``a``.  The system splits into
    one block per ``(i, f)`` sharing the coefficient matrix ``F^T``; the
    homogeneous kernel of the whole system is ``ker(F^T)`` repeated
    ``dim(b) * dim(Hom)`` times.
    """
    h = am.bimonoid
    if bm.bimonoid != h:
        raise ShapeMismatch("modules are over different bimonoids")
    for m in (am, bm):
        if not check_module(m).passed:
            raise AxiomViolation(f"module {m.name} fails its axioms")
    if not is_right_hopf(h):
        raise NotHopf(f"{h.name or 'bimonoid'} is not right Hopf; lifted homs need not exist")
    f = h.field
    a, b = am.carrier, bm.carrier
    n, da, db = h.dim, a.dim, b.dim
    hom, ev_map = internal_hom(a, b, f)
    ev = ev_map.mat
    dh = hom.dim
    fusion = module_fusion(am, verify=False).mat     # (a, H) <- (H, a)
    # right-hand sides: beta(h (x) f(a_k)) for all (h, k) and every (i, f)
    target = bm.action.mat @ Matrix.identity(n, f).kron(ev)     # b <- (H, a, Hom)
    # reorder so rows are (h, k) and columns are (i, f)
    rhs: dict[int, dict[int, object]] = {}
    for i, row in target.iter_rows():
        for col, v in row.items():
            hk, fidx = divmod(col, dh)
            rhs.setdefault(hk, {})[i * dh + fidx] = v
    system = fusion.T
    try:
        sol, kernel = solve(system, Matrix(n * da, db * dh, rhs, f))
    except NotInSubspace as exc:
        raise Inconsistent("defining equation for the lifted action has no solution") from exc
    if kernel:
        raise NotHopf(f"lifted action is not unique: kernel dimension {kernel * db * dh}")
    # sol[(j, h'), (i, f)] = rho[(i, j), (h', f)]
    data: dict[tuple[int, int], object] = {}
    for jh, row in sol.iter_rows():
        j, hp = divmod(jh, n)
        for ifx, v in row.items():
            i, fidx = divmod(ifx, dh)
            data[(i * da + j, hp * dh + fidx)] = v
    rho = Matrix.from_dict(dh, n * dh, data, f)
    return LiftedHom(hom, MorphismV(tensor_objects(h.carrier, hom), hom, rho), ev_map)


def lifted_hom_system(am: ModuleOverBimonoid, bm: ModuleOverBimonoid) -> tuple[Matrix, Matrix]:
    """The unreduced linear system in all entries of ``rho``.

    Unknown ``rho[r, c]`` has index ``r * (dim H * dim Hom) + c``; the
    equation for output ``i`` and input column ``col`` has index
    ``i * (dim H * dim a * dim Hom) + col``.  Built by evaluating the
    defining equation on each matrix unit, so it is independent of the
    block decomposition used by :func:`lift_internal_hom`.
    """
    h = am.bimonoid
    f = h.field
    hom, ev = internal_hom(am.carrier, bm.carrier, f)
    dh = hom.dim
    ncols_rho = h.dim * dh
    psi = _psi(h, am.carrier, hom)
    zero_rho = Matrix.zeros(dh, ncols_rho, f)
    lhs, _ = defining_sides(am, bm, hom, ev.mat, zero_rho)
    width = lhs.ncols
    columns: list[dict[int, object]] = []
    for r in range(dh):
        for c in range(ncols_rho):
            unit = Matrix(dh, ncols_rho, {r: {c: f.norm(1)}}, f)
            rhs = ev.mat @ am.action.mat.kron(unit) @ psi
            col = {}
            for i, row in rhs.iter_rows():
                for k, v in row.items():
                    col[i * width + k] = v
            columns.append(col)
    a = Matrix.from_columns(bm.dim * width, columns, f)
    b = Matrix.from_columns(bm.dim * width,
                            [{i * width + k: v for i, row in lhs.iter_rows() for k, v in row.items()}],
                            f)
    return a, b


def check_ev_morphism(lh: LiftedHom, am: ModuleOverBimonoid, bm: ModuleOverBimonoid) -> Report:
    h = am.bimonoid
    if lh.ev.mat.shape != (bm.dim, am.dim * lh.carrier.dim):
        raise ShapeMismatch("evaluation map has the wrong shape")
    if lh.rho.mat.shape != (lh.carrier.dim, h.dim * lh.carrier.dim):
        raise ShapeMismatch("lifted action has the wrong shape")
    lhs, rhs = defining_sides(am, bm, lh.carrier, lh.ev.mat, lh.rho.mat)
    r = Report("evaluation is a module morphism")
    r.equal("beta . t(ev) = ev . (alpha (x) rho) . psi", lhs, rhs)
    return r


def twisted_action(h: Bimonoid, am: ModuleOverBimonoid, bm: ModuleOverBimonoid,
                   s: Matrix, variant: int) -> Matrix:
    """Closed-form candidates for the action on ``Hom(a, b)``.

    variant 1: ``(h . f)(v) = h(1) . f(S(h(2)) . v)``
    variant 2: ``(h . f)(v) = h(2) . f(S(h(1)) . v)`` with ``S`` replaced by
    the caller-supplied ``s`` (pass ``S^{-1}`` for the second candidate).
    """
    f = h.field
    n = h.dim
    a, b = am.carrier, bm.carrier
    hom, _ = internal_hom(a, b, f)
    alpha, beta = am.action.mat, bm.action.mat
    alpha_cols = alpha.columns()
    beta_cols = beta.columns()
    s_cols = s.columns()
    d_cols = h.delta.columns()
    data: dict[tuple[int, int], object] = {}
    norm = f.norm
    for hb in range(n):
        for (pair, dv) in d_cols[hb].items():
            h1, h2 = divmod(pair, n)
            outer, inner = (h1, h2) if variant == 1 else (h2, h1)
            for sidx, sv in s_cols[inner].items():
                for i in range(b.dim):
                    for j in range(a.dim):
                        fidx = i * a.dim + j
                        col = hb * hom.dim + fidx
                        # (h.e_ij)(v_k) = outer . e_ij(S(inner) . v_k)
                        for k in range(a.dim):
                            av = alpha_cols[sidx * a.dim + k].get(j, 0)
                            if not av:
                                continue
                            for i2, bv in beta_cols[outer * b.dim + i].items():
                                key = (i2 * a.dim + k, col)
                                data[key] = norm(data.get(key, 0) + dv * sv * av * bv)
    return Matrix.from_dict(hom.dim, n * hom.dim, data, f)
