"""Exact scalars and sparse exact matrices.

All structure constants in the toolkit live in :class:`Matrix`, a sparse
row-major matrix over a :class:`Field` (the rationals or a prime field).
Entries are never floats.  Rational entries are stored as ``int`` whenever
they are integral and as :class:`fractions.Fraction` otherwise, which keeps
the common 0/1/-1 case fast.

Tensor index convention (used everywhere): zero-based, row-major
lexicographic, i.e. the basis vector ``(i, j)`` of ``X (x) Y`` has index
``i * dim(Y) + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import NotInSubspace, NotInvertible, ShapeMismatch

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """An exact field: ``Field("rational")`` or ``Field("prime", p)``."""

    kind: str = "rational"
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def norm(self, x: Scalar) -> Scalar:
        if self.p is not None:
            if type(x) is int:
                return x % self.p
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return x % self.p
        if type(x) is int:
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def coerce(self, x: object) -> Scalar:
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(x, int):
            return self.norm(x)
        if isinstance(x, Fraction):
            return self.norm(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to an exact scalar")

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.p is not None:
            return pow(x, -1, self.p)
        return self.norm(Fraction(1) / x)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a * self.inv(b))

    def parse(self, text: str) -> Scalar:
        s = text.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                value = Fraction(int(num), int(den))
            else:
                value = int(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact scalar: {text!r}") from exc
        return self.norm(value)

    def format(self, x: Scalar) -> str:
        x = self.norm(x)
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    def label(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field("rational")


def GF(p: int) -> Field:
    return Field("prime", p)


def parse_field(text: str) -> Field:
    """Parse ``rational``/``QQ`` or ``prime:5``/``GF(5)``/``5``."""
    s = text.strip()
    if s.lower() in ("rational", "qq", "q"):
        return QQ
    for prefix in ("prime:", "gf(", "gf"):
        if s.lower().startswith(prefix):
            s = s[len(prefix):].rstrip(")")
            break
    try:
        return GF(int(s))
    except ValueError as exc:
        raise ValueError(f"unrecognised field {text!r}") from exc


Row = dict


class Matrix:
    """Immutable sparse matrix over an exact field.

    ``rows`` maps a row index to a dict ``{column: nonzero scalar}``; zero
    entries and empty rows are never stored, so structural equality is
    plain dict equality.
    """

    __slots__ = ("nrows", "ncols", "field", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: dict[int, Row], field: Field = QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self._rows = rows

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> Matrix:
        return cls(nrows, ncols, {}, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> Matrix:
        one = field.norm(1)
        return cls(n, n, {i: {i: one} for i in range(n)}, field)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], field: Field = QQ,
                  ncols: int | None = None) -> Matrix:
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        data: dict[int, Row] = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ShapeMismatch(f"row {i} has {len(row)} entries, expected {ncols}")
            d = {}
            for j, x in enumerate(row):
                v = field.coerce(x)
                if v != 0:
                    d[j] = v
            if d:
                data[i] = d
        return cls(nrows, ncols, data, field)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Sequence[object],
                     field: Field = QQ) -> Matrix:
        if len(entries) != nrows * ncols:
            raise ShapeMismatch(f"{len(entries)} entries for a {nrows}x{ncols} matrix")
        return cls.from_rows([entries[i * ncols:(i + 1) * ncols] for i in range(nrows)],
                             field, ncols)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict[int, Scalar]],
                     field: Field = QQ) -> Matrix:
        data: dict[int, Row] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v != 0:
                    data.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), data, field)

    @classmethod
    def from_dict(cls, nrows: int, ncols: int, entries: dict[tuple[int, int], object],
                  field: Field = QQ) -> Matrix:
        data: dict[int, Row] = {}
        for (i, j), x in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ShapeMismatch(f"entry ({i},{j}) outside {nrows}x{ncols}")
            v = field.coerce(x)
            if v != 0:
                data.setdefault(i, {})[j] = v
        return cls(nrows, ncols, data, field)

    # inspection ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self._rows.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict[int, Scalar]:
        return dict(self._rows.get(i, {}))

    def iter_rows(self) -> Iterator[tuple[int, Row]]:
        return iter(self._rows.items())

    def columns(self) -> list[dict[int, Scalar]]:
        cols: list[dict[int, Scalar]] = [{} for _ in range(self.ncols)]
        for i, row in self._rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def to_rows(self) -> list[list[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    @property
    def entries(self) -> list[Scalar]:
        return [x for row in self.to_rows() for x in row]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_identity(self) -> bool:
        if self.nrows != self.ncols or len(self._rows) != self.nrows:
            return False
        for i, row in self._rows.items():
            if len(row) != 1 or row.get(i) != 1:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self._rows == other._rows)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.to_rows())
            return f"Matrix({self.nrows}x{self.ncols} over {self.field.label()}: [{body}])"
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.label()}, nnz={self.nnz()})"

    def first_difference(self, other: Matrix) -> tuple[int, int, Scalar, Scalar] | None:
        """Lexicographically first entry where two same-shape matrices differ."""
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        best = None
        for i in sorted(set(self._rows) | set(other._rows)):
            a, b = self._rows.get(i, {}), other._rows.get(i, {})
            if a == b:
                continue
            for j in sorted(set(a) | set(b)):
                if a.get(j, 0) != b.get(j, 0):
                    best = (i, j, a.get(j, 0), b.get(j, 0))
                    break
            break
        return best

    # arithmetic ---------------------------------------------------------

    def _check_field(self, other: Matrix) -> None:
        if self.field != other.field:
            raise ShapeMismatch(f"field mismatch: {self.field.label()} vs {other.field.label()}")

    def __add__(self, other: Matrix) -> Matrix:
        return self._combine(other, 1)

    def __sub__(self, other: Matrix) -> Matrix:
        return self._combine(other, -1)

    def _combine(self, other: Matrix, sign: int) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        norm = self.field.norm
        data = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            tgt = data.setdefault(i, {})
            for j, v in row.items():
                nv = norm(tgt.get(j, 0) + sign * v)
                if nv == 0:
                    tgt.pop(j, None)
                else:
                    tgt[j] = nv
            if not tgt:
                del data[i]
        return Matrix(self.nrows, self.ncols, data, self.field)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, s: object) -> Matrix:
        norm = self.field.norm
        c = self.field.coerce(s)
        if c == 0:
            return Matrix.zeros(self.nrows, self.ncols, self.field)
        data = {i: {j: norm(c * v) for j, v in r.items()} for i, r in self._rows.items()}
        return Matrix(self.nrows, self.ncols, data, self.field)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        norm = self.field.norm
        orows = other._rows
        data: dict[int, Row] = {}
        for i, arow in self._rows.items():
            acc: dict[int, Scalar] = {}
            for k, a in arow.items():
                brow = orows.get(k)
                if brow is None:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, 0) + a * b
            out = {}
            for j, v in acc.items():
                v = norm(v)
                if v != 0:
                    out[j] = v
            if out:
                data[i] = out
        return Matrix(self.nrows, other.ncols, data, self.field)

    @property
    def T(self) -> Matrix:
        data: dict[int, Row] = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                data.setdefault(j, {})[i] = v
        return Matrix(self.ncols, self.nrows, data, self.field)

    def kron(self, other: Matrix) -> Matrix:
        self._check_field(other)
        norm = self.field.norm
        br, bc = other.nrows, other.ncols
        data: dict[int, Row] = {}
        if other.is_identity():
            for ia, arow in self._rows.items():
                base = ia * br
                for ib in range(br):
                    data[base + ib] = {ja * bc + ib: a for ja, a in arow.items()}
            return Matrix(self.nrows * br, self.ncols * bc, data, self.field)
        if self.is_identity():
            for ia in range(self.nrows):
                base = ia * bc
                for ib, brow in other._rows.items():
                    data[ia * br + ib] = {base + jb: b for jb, b in brow.items()}
            return Matrix(self.nrows * br, self.ncols * bc, data, self.field)
        for ia, arow in self._rows.items():
            for ib, brow in other._rows.items():
                out = {}
                for ja, a in arow.items():
                    base = ja * bc
                    for jb, b in brow.items():
                        out[base + jb] = norm(a * b)
                data[ia * br + ib] = out
        return Matrix(self.nrows * br, self.ncols * bc, data, self.field)

    def hstack(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.nrows != other.nrows:
            raise ShapeMismatch("hstack needs equal row counts")
        data = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            tgt = data.setdefault(i, {})
            for j, v in row.items():
                tgt[self.ncols + j] = v
        return Matrix(self.nrows, self.ncols + other.ncols, data, self.field)

    def vstack(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.ncols != other.ncols:
            raise ShapeMismatch("vstack needs equal column counts")
        data = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            data[self.nrows + i] = dict(row)
        return Matrix(self.nrows + other.nrows, self.ncols, data, self.field)

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        data = {}
        for new, old in enumerate(idx):
            r = self._rows.get(old)
            if r:
                data[new] = dict(r)
        return Matrix(len(idx), self.ncols, data, self.field)

    def select_columns(self, idx: Sequence[int]) -> Matrix:
        pos = {old: new for new, old in enumerate(idx)}
        data = {}
        for i, row in self._rows.items():
            out = {pos[j]: v for j, v in row.items() if j in pos}
            if out:
                data[i] = out
        return Matrix(self.nrows, len(idx), data, self.field)

    def with_entry(self, i: int, j: int, value: object) -> Matrix:
        data = {r: dict(row) for r, row in self._rows.items()}
        v = self.field.coerce(value)
        if v == 0:
            data.get(i, {}).pop(j, None)
            if i in data and not data[i]:
                del data[i]
        else:
            data.setdefault(i, {})[j] = v
        return Matrix(self.nrows, self.ncols, data, self.field)

    # linear algebra -----------------------------------------------------

    def rref(self) -> tuple[list[int], dict[int, Row]]:
        """Reduced row echelon form: ``(pivot columns ascending, {pivot col: row})``."""
        pivots = _reduce(list(self._rows.values()), self.field)
        return sorted(pivots), pivots

    def rank(self) -> int:
        return len(_reduce(list(self._rows.values()), self.field))

    def inverse(self) -> Matrix:
        return mat_inverse(self)


def _reduce(rows: Iterable[Row], field: Field, limit: int | None = None) -> dict[int, Row]:
    """Fully reduced echelon form of the span of ``rows``.

    Returns ``{pivot column: row}`` where every row has a 1 at its pivot,
    its pivot is its least column, and it vanishes at every other pivot
    column.  When ``limit`` is given only columns ``< limit`` may become
    pivots; a row whose entries all lie at ``>= limit`` is returned under
    the key ``-1`` (an inconsistency witness for augmented systems).
    """
    norm = field.norm
    inv = field.inv
    pivots: dict[int, Row] = {}
    for src in rows:
        r = dict(src)
        for c in [c for c in r if c in pivots]:
            a = r.get(c)
            if not a:
                continue
            for k, v in pivots[c].items():
                nv = norm(r.get(k, 0) - a * v)
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
        if not r:
            continue
        pc = min(r)
        if limit is not None and pc >= limit:
            pivots[-1] = r
            return pivots
        s = inv(r[pc])
        if s != 1:
            r = {k: norm(v * s) for k, v in r.items()}
        for prow in pivots.values():
            a = prow.get(pc)
            if a:
                for k, v in r.items():
                    nv = norm(prow.get(k, 0) - a * v)
                    if nv == 0:
                        prow.pop(k, None)
                    else:
                        prow[k] = nv
        pivots[pc] = r
    return pivots


def identity(n: int, field: Field = QQ) -> Matrix:
    return Matrix.identity(n, field)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


def kron_all(mats: Sequence[Matrix], field: Field = QQ) -> Matrix:
    out = Matrix.identity(1, mats[0].field if mats else field)
    for m in mats:
        out = out.kron(m)
    return out


def apply_middle(left: int, t: Matrix, right: int, m: Matrix) -> Matrix:
    """``(1_left (x) t (x) 1_right) @ m`` without forming the Kronecker product."""
    if m.nrows != left * t.ncols * right:
        raise ShapeMismatch(f"cannot apply a {t.shape} middle factor to {m.shape}")
    norm = m.field.norm
    tcols = t.columns()
    tin, tout = t.ncols, t.nrows
    data: dict[int, Row] = {}
    for r, row in m._rows.items():
        a, rest = divmod(r, tin * right)
        i, b = divmod(rest, right)
        for i2, tv in tcols[i].items():
            tgt = data.setdefault((a * tout + i2) * right + b, {})
            for j, v in row.items():
                tgt[j] = tgt.get(j, 0) + tv * v
    clean: dict[int, Row] = {}
    for r, row in data.items():
        row = {j: norm(v) for j, v in row.items()}
        row = {j: v for j, v in row.items() if v != 0}
        if row:
            clean[r] = row
    return Matrix(left * tout * right, m.ncols, clean, m.field)


def mat_inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ShapeMismatch(f"cannot invert a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    aug = m.hstack(Matrix.identity(n, m.field))
    pivots = _reduce(list(aug._rows.values()), m.field, limit=n)
    if -1 in pivots or len(pivots) < n:
        raise NotInvertible(f"matrix has rank < {n}")
    data = {}
    for i in range(n):
        out = {k - n: v for k, v in pivots[i].items() if k >= n}
        if out:
            data[i] = out
    return Matrix(n, n, data, m.field)


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and m.rank() == m.nrows


@dataclass(frozen=True)
class SubspaceEmbedding:
    """A subspace of ``field^ambient_dim`` given by a canonical basis.

    ``basis`` is ``ambient_dim x k`` in reduced column echelon form: column
    ``t`` has a 1 in row ``pivots[t]`` and every other column vanishes there.
    """

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...] = dc_field(default=())

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def field(self) -> Field:
        return self.basis.field

    @classmethod
    def span(cls, vectors: Matrix) -> SubspaceEmbedding:
        """Canonical embedding of the column span of ``vectors``."""
        piv = _reduce(list(vectors.T._rows.values()), vectors.field)
        order = sorted(piv)
        basis = Matrix.from_columns(vectors.nrows, [piv[c] for c in order], vectors.field)
        return cls(vectors.nrows, basis, tuple(order))

    @classmethod
    def full(cls, n: int, field: Field = QQ) -> SubspaceEmbedding:
        return cls(n, Matrix.identity(n, field), tuple(range(n)))


def kernel_basis(m: Matrix) -> SubspaceEmbedding:
    """Canonical basis of ``{v : m v = 0}``."""
    pivots = _reduce(list(m._rows.values()), m.field)
    norm = m.field.norm
    free = [j for j in range(m.ncols) if j not in pivots]
    cols = []
    for f in free:
        v = {f: m.field.norm(1)}
        for pc, prow in pivots.items():
            a = prow.get(f)
            if a:
                v[pc] = norm(-a)
        cols.append(v)
    vectors = Matrix.from_columns(m.ncols, cols, m.field)
    return SubspaceEmbedding.span(vectors)


def equalizer_subspace(f: Matrix, g: Matrix, retraction: Matrix | None = None) -> SubspaceEmbedding:
    """Equalizer of a parallel pair; optionally certify a common retraction."""
    if f.shape != g.shape:
        raise ShapeMismatch(f"parallel pair shapes differ: {f.shape} vs {g.shape}")
    if retraction is not None:
        ident = Matrix.identity(f.ncols, f.field)
        if retraction @ f != ident or retraction @ g != ident:
            raise ShapeMismatch("supplied map is not a common retraction of the pair")
    return kernel_basis(f - g)


def factor_through(e: SubspaceEmbedding, h: Matrix) -> Matrix:
    """The unique ``x`` with ``e.basis @ x == h``."""
    if h.nrows != e.ambient_dim:
        raise ShapeMismatch(f"map has {h.nrows} rows, subspace lives in dim {e.ambient_dim}")
    x = h.select_rows(e.pivots)
    if e.basis @ x != h:
        raise NotInSubspace("some column does not lie in the subspace")
    return x


def solve(a: Matrix, b: Matrix) -> tuple[Matrix, int]:
    """Solve ``a x = b`` exactly.

    Returns ``(particular solution, dimension of the homogeneous kernel)``.
    Free variables are set to zero.  Raises :class:`NotInSubspace` when the
    system is inconsistent.
    """
    if a.nrows != b.nrows:
        raise ShapeMismatch(f"system {a.shape} with right-hand side {b.shape}")
    n = a.ncols
    aug = a.hstack(b)
    pivots = _reduce(list(aug._rows.values()), a.field, limit=n)
    if -1 in pivots:
        raise NotInSubspace("inconsistent linear system")
    data = {}
    for pc, row in pivots.items():
        out = {k - n: v for k, v in row.items() if k >= n}
        if out:
            data[pc] = out
    return Matrix(n, b.ncols, data, a.field), n - len(pivots)
