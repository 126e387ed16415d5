"""Fusion operators, the right Hopf verdict, and antipodes of bimonoids.

For ``t = H (x) -`` the composite ``t(t(x) (x) y) -> t(x) (x) t(y)`` built from
the opmonoidal structure and the monad multiplication, evaluated at
``x = y = I``, is the operator ``h (x) h' -> h(1) h' (x) h(2)`` (side
``"paper46"``).  Side ``"galois"`` is ``h (x) h' -> h(1) (x) h(2) h'``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomViolation, NoAntipode, NonUnique, NotInSubspace, ShapeMismatch
from .linalg import Matrix, is_invertible, solve
from .report import Report
from .structures import Bimonoid, check_bimonoid
from .vect import MorphismV, shuffle, tensor_objects

SIDES = ("galois", "paper46")


@dataclass(frozen=True)
class AntipodeCertificate:
    s: MorphismV
    side_checks: tuple[bool, bool]


def _require_bimonoid(h: Bimonoid) -> None:
    report = check_bimonoid(h)
    if not report.passed:
        bad = report.failures()[0]
        raise AxiomViolation(f"{h.name or 'input'} is not a bimonoid: {bad.name} ({bad.detail})")


def fusion_operator(h: Bimonoid, side: str = "paper46", *, verify: bool = True) -> MorphismV:
    if side not in SIDES:
        raise ValueError(f"unknown fusion side {side!r}")
    if verify:
        _require_bimonoid(h)
    x = h.carrier
    one = Matrix.identity(h.dim, h.field)
    if side == "galois":
        mat = one.kron(h.mu) @ h.delta.kron(one)
    else:
        # h(x)h' -> h1 (x) h2 (x) h' -> h1 (x) h' (x) h2 -> h1 h' (x) h2
        swap = shuffle([x, x, x], [0, 2, 1], h.braiding, h.field)
        mat = h.mu.kron(one) @ swap @ h.delta.kron(one)
    xx = tensor_objects(x, x)
    return MorphismV(xx, xx, mat)


def is_right_hopf(h: Bimonoid) -> bool:
    return is_invertible(fusion_operator(h, "paper46").mat)


def _convolution_system(h: Bimonoid) -> tuple[Matrix, Matrix]:
    """Linear system in the entries of ``S`` for both convolution equations.

    Unknown ``S[i, a]`` has index ``i * n + a``.  Left equation entry
    ``(k, l)``: ``sum_{i,a,b} mu[k, i n + b] S[i, a] delta[a n + b, l]``;
    right equation symmetric in the tensor slot.
    """
    n = h.dim
    f = h.field
    norm = f.norm
    mu_cols = h.mu.columns()        # column (i n + b) -> {k: val}
    d_rows = {r: row for r, row in h.delta.iter_rows()}   # (a n + b) -> {l: val}
    target = (h.eta @ h.epsilon)
    rows: dict[int, dict[int, object]] = {}
    rhs: dict[int, dict[int, object]] = {}
    for side in (0, 1):
        base = side * n * n
        for i in range(n):
            for a in range(n):
                unknown = i * n + a
                for b in range(n):
                    # left: S on first slot -> mu column (i, b), delta row (a, b)
                    # right: S on second slot -> mu column (b, i), delta row (b, a)
                    mcol = mu_cols[i * n + b] if side == 0 else mu_cols[b * n + i]
                    drow = d_rows.get(a * n + b) if side == 0 else d_rows.get(b * n + a)
                    if not mcol or not drow:
                        continue
                    for k, mv in mcol.items():
                        for l, dv in drow.items():
                            eq = base + k * n + l
                            row = rows.setdefault(eq, {})
                            row[unknown] = norm(row.get(unknown, 0) + mv * dv)
        for (k, l) in ((k, l) for k in range(n) for l in range(n)):
            v = target[k, l]
            if v:
                rhs[base + k * n + l] = {0: v}
    clean = {}
    for eq, row in rows.items():
        row = {j: v for j, v in row.items() if v != 0}
        if row:
            clean[eq] = row
    a = Matrix(2 * n * n, n * n, clean, f)
    b = Matrix(2 * n * n, 1, rhs, f)
    return a, b


def extract_antipode(h: Bimonoid) -> AntipodeCertificate:
    """Solve both convolution equations for ``S`` as one exact system."""
    _require_bimonoid(h)
    a, b = _convolution_system(h)
    try:
        sol, kernel = solve(a, b)
    except NotInSubspace as exc:
        raise NoAntipode(f"{h.name or 'bimonoid'} has no antipode: convolution system is inconsistent") from exc
    if kernel:
        raise NonUnique(f"antipode system has a {kernel}-dimensional kernel")
    n = h.dim
    smat = Matrix.from_dict(n, n, {(u // n, u % n): sol[u, 0] for u in range(n * n) if sol[u, 0]},
                            h.field)
    s = MorphismV(h.carrier, h.carrier, smat)
    rep = check_antipode(h, s)
    return AntipodeCertificate(s, (rep.get("left convolution").passed,
                                   rep.get("right convolution").passed))


def check_antipode(h: Bimonoid, s: MorphismV | Matrix) -> Report:
    smat = s.mat if isinstance(s, MorphismV) else s
    n = h.dim
    if smat.shape != (n, n):
        raise ShapeMismatch(f"antipode candidate is {smat.nrows}x{smat.ncols}, expected {n}x{n}")
    one = Matrix.identity(n, h.field)
    target = h.eta @ h.epsilon
    r = Report(f"antipode of {h.name}".strip())
    r.equal("left convolution", h.mu @ smat.kron(one) @ h.delta, target)
    r.equal("right convolution", h.mu @ one.kron(smat) @ h.delta, target)
    return r


def galois_inverse_from_antipode(h: Bimonoid, s: Matrix) -> Matrix:
    """``h (x) h' -> h(1) (x) S(h(2)) h'``."""
    one = Matrix.identity(h.dim, h.field)
    return one.kron(h.mu) @ one.kron(s).kron(one) @ h.delta.kron(one)


def is_anti_homomorphism(h: Bimonoid, s: Matrix) -> bool:
    """``S mu = mu (S (x) S) c``."""
    x = h.carrier
    c = shuffle([x, x], [1, 0], h.braiding, h.field)
    return s @ h.mu == h.mu @ s.kron(s) @ c
