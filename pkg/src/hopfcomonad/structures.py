"""Comonoids, monoids and bimonoids in V given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import AxiomViolation, NotAMonoid, ShapeMismatch
from .linalg import QQ, Field, Matrix
from .report import Report
from .vect import (UNIT, MorphismV, VectObject, braiding, permute_rows, shuffle, tensor_morphisms,
                   tensor_objects)


@dataclass(frozen=True)
class Comonoid:
    carrier: VectObject
    delta: MorphismV
    epsilon: MorphismV
    name: str = field(default="", compare=False)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self) -> Field:
        return self.delta.field

    def identity(self) -> Matrix:
        return Matrix.identity(self.dim, self.field)


@dataclass(frozen=True)
class Monoid:
    carrier: VectObject
    mu: MorphismV
    eta: MorphismV
    name: str = field(default="", compare=False)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self) -> Field:
        return self.mu.field


@dataclass(frozen=True)
class Bimonoid:
    comonoid: Comonoid
    monoid: Monoid
    braiding: str = "symmetric"
    name: str = field(default="", compare=False)

    @property
    def carrier(self) -> VectObject:
        return self.monoid.carrier

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self) -> Field:
        return self.monoid.field

    # raw structure matrices, used all over the place
    @property
    def mu(self) -> Matrix:
        return self.monoid.mu.mat

    @property
    def eta(self) -> Matrix:
        return self.monoid.eta.mat

    @property
    def delta(self) -> Matrix:
        return self.comonoid.delta.mat

    @property
    def epsilon(self) -> Matrix:
        return self.comonoid.epsilon.mat


def make_comonoid(carrier: VectObject, delta: Matrix, epsilon: Matrix, name: str = "") -> Comonoid:
    cc = tensor_objects(carrier, carrier)
    return Comonoid(carrier, MorphismV(carrier, cc, delta), MorphismV(carrier, UNIT, epsilon), name)


def make_monoid(carrier: VectObject, mu: Matrix, eta: Matrix, name: str = "") -> Monoid:
    cc = tensor_objects(carrier, carrier)
    return Monoid(carrier, MorphismV(cc, carrier, mu), MorphismV(UNIT, carrier, eta), name)


def unit_comonoid(field: Field = QQ) -> Comonoid:
    one = Matrix.identity(1, field)
    return make_comonoid(UNIT, one, one, "k")


def tensor_comonoid(a: Comonoid, b: Comonoid, braid: str = "symmetric") -> Comonoid:
    """``A (x) B`` with ``delta = (1 (x) c_{A,B} (x) 1)(delta_A (x) delta_B)``."""
    f = a.field
    x, y = a.carrier, b.carrier
    delta = permute_rows([x, x, y, y], [0, 2, 1, 3], a.delta.mat.kron(b.delta.mat), braid)
    eps = a.epsilon.mat.kron(b.epsilon.mat)
    return make_comonoid(tensor_objects(x, y), delta, eps, f"{a.name}*{b.name}")


def _check_shape(name: str, m: MorphismV, rows: int, cols: int) -> None:
    if m.mat.shape != (rows, cols):
        raise ShapeMismatch(f"{name} is {m.mat.nrows}x{m.mat.ncols}, expected {rows}x{cols}")


def check_comonoid(c: Comonoid) -> Report:
    n = c.dim
    _check_shape("delta", c.delta, n * n, n)
    _check_shape("epsilon", c.epsilon, 1, n)
    f = c.field
    one = Matrix.identity(n, f)
    d, e = c.delta.mat, c.epsilon.mat
    r = Report(f"comonoid {c.name}".strip())
    r.equal("coassociativity", d.kron(one) @ d, one.kron(d) @ d)
    r.equal("left counit", e.kron(one) @ d, one)
    r.equal("right counit", one.kron(e) @ d, one)
    if not c.carrier.trivially_graded:
        r.add("delta parity-preserving", c.delta.is_parity_preserving())
        r.add("epsilon parity-preserving", c.epsilon.is_parity_preserving())
    return r


def check_monoid(m: Monoid) -> Report:
    n = m.dim
    _check_shape("mu", m.mu, n, n * n)
    _check_shape("eta", m.eta, n, 1)
    one = Matrix.identity(n, m.field)
    mu, eta = m.mu.mat, m.eta.mat
    r = Report(f"monoid {m.name}".strip())
    r.equal("associativity", mu @ mu.kron(one), mu @ one.kron(mu))
    r.equal("left unit", mu @ eta.kron(one), one)
    r.equal("right unit", mu @ one.kron(eta), one)
    if not m.carrier.trivially_graded:
        r.add("mu parity-preserving", m.mu.is_parity_preserving())
        r.add("eta parity-preserving", m.eta.is_parity_preserving())
    return r


def check_bimonoid(h: Bimonoid, braid: str | None = None) -> Report:
    """Comonoid axioms, monoid axioms and the four compatibility equations."""
    braid = braid or h.braiding
    if h.comonoid.carrier != h.monoid.carrier:
        raise ShapeMismatch("comonoid and monoid carriers differ")
    r = Report(f"bimonoid {h.name}".strip())
    r.extend(check_comonoid(h.comonoid), "comonoid: ")
    r.extend(check_monoid(h.monoid), "monoid: ")
    f = h.field
    x = h.carrier
    mu, eta, d, e = h.mu, h.eta, h.delta, h.epsilon
    mid = shuffle([x, x, x, x], [0, 2, 1, 3], braid, f)
    r.equal("delta is multiplicative", d @ mu, mu.kron(mu) @ mid @ d.kron(d))
    r.equal("epsilon is multiplicative", e @ mu, e.kron(e))
    r.equal("delta is unital", d @ eta, eta.kron(eta))
    r.equal("epsilon is unital", e @ eta, Matrix.identity(1, f))
    return r


def dual_comonoid(c: Comonoid, braid: str = "symmetric") -> Comonoid:
    """The comonoid ``C°``: same carrier and counit, ``delta° = c_{C,C} delta``."""
    if not check_comonoid(c).passed:
        raise AxiomViolation(f"{c.name or 'input'} is not a comonoid")
    cflip = braiding(c.carrier, c.carrier, braid, c.field)
    return Comonoid(c.carrier, cflip @ c.delta, c.epsilon, f"{c.name}°")


def _basis_product(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAMonoid("multiplication table must be a non-empty square")
    if any(not (0 <= v < n) for row in table for v in row):
        raise NotAMonoid("table entries must name elements")
    units = [u for u in range(n)
             if all(table[u][a] == a and table[a][u] == a for a in range(n))]
    if not units:
        raise NotAMonoid("no two-sided unit element")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAMonoid(f"associativity fails at ({a},{b},{c})")
    return units[0]


def monoid_algebra(table: Sequence[Sequence[int]], field: Field = QQ, name: str = "") -> Bimonoid:
    """The monoid algebra ``k[M]`` with every basis element group-like."""
    unit = _basis_product(table)
    n = len(table)
    one = field.norm(1)
    mu = Matrix.from_dict(n, n * n, {(table[a][b], a * n + b): one
                                     for a in range(n) for b in range(n)}, field)
    eta = Matrix.from_dict(n, 1, {(unit, 0): one}, field)
    delta = Matrix.from_dict(n * n, n, {(a * n + a, a): one for a in range(n)}, field)
    eps = Matrix.from_dict(1, n, {(0, a): one for a in range(n)}, field)
    x = VectObject.even(n)
    return Bimonoid(make_comonoid(x, delta, eps, name), make_monoid(x, mu, eta, name),
                    "symmetric", name)


def convolution(h: Bimonoid, f: Matrix, g: Matrix) -> Matrix:
    """``f * g = mu (f (x) g) delta``."""
    return h.mu @ f.kron(g) @ h.delta
