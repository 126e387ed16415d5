"""The base braided category: finite-dimensional parity-graded vector spaces.

Two braidings are available.  ``"symmetric"`` is the plain flip, ``"super"``
the flip with the Koszul sign ``(-1)^{|x||y|}``.  Both are symmetric
(``c_{Y,X} c_{X,Y} = 1``), so any reordering of tensor factors is a
well-defined signed permutation; :func:`shuffle` builds it directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import ShapeMismatch
from .linalg import QQ, Field, Matrix

BRAIDINGS = ("symmetric", "super")


@dataclass(frozen=True)
class VectObject:
    dim: int
    parity: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.parity:
            object.__setattr__(self, "parity", (0,) * self.dim)
        if len(self.parity) != self.dim:
            raise ShapeMismatch(f"parity has length {len(self.parity)}, dim is {self.dim}")
        if not set(self.parity) <= {0, 1}:
            raise ValueError("parities must be 0 or 1")

    @classmethod
    def even(cls, dim: int) -> VectObject:
        return cls(dim, (0,) * dim)

    @property
    def trivially_graded(self) -> bool:
        return 1 not in self.parity


UNIT = VectObject(1, (0,))


def tensor_objects(x: VectObject, y: VectObject) -> VectObject:
    if x.trivially_graded and y.trivially_graded:
        return VectObject(x.dim * y.dim, (0,) * (x.dim * y.dim))
    parity = tuple((a + b) % 2 for a in x.parity for b in y.parity)
    return VectObject(x.dim * y.dim, parity)


def tensor_all(objs: Sequence[VectObject]) -> VectObject:
    out = UNIT
    for o in objs:
        out = tensor_objects(out, o)
    return out


@dataclass(frozen=True)
class MorphismV:
    dom: VectObject
    cod: VectObject
    mat: Matrix

    def __post_init__(self) -> None:
        if self.mat.shape != (self.cod.dim, self.dom.dim):
            raise ShapeMismatch(
                f"matrix is {self.mat.nrows}x{self.mat.ncols}, "
                f"expected {self.cod.dim}x{self.dom.dim}")

    @property
    def field(self) -> Field:
        return self.mat.field

    def __matmul__(self, other: MorphismV) -> MorphismV:
        """Composition ``self o other``."""
        if other.cod.dim != self.dom.dim:
            raise ShapeMismatch(f"cannot compose {self.dom.dim}<-... with ...->{other.cod.dim}")
        return MorphismV(other.dom, self.cod, self.mat @ other.mat)

    def is_parity_preserving(self) -> bool:
        for i, row in self.mat.iter_rows():
            for j in row:
                if self.cod.parity[i] != self.dom.parity[j]:
                    return False
        return True

    @classmethod
    def identity(cls, x: VectObject, field: Field = QQ) -> MorphismV:
        return cls(x, x, Matrix.identity(x.dim, field))


def tensor_morphisms(f: MorphismV, g: MorphismV) -> MorphismV:
    return MorphismV(tensor_objects(f.dom, g.dom), tensor_objects(f.cod, g.cod),
                     f.mat.kron(g.mat))


def koszul_sign(parities: Sequence[int], perm: Sequence[int]) -> int:
    """Sign of moving homogeneous factors into the order ``perm``."""
    odd = 0
    for a in range(len(perm)):
        pa = parities[perm[a]]
        if not pa:
            continue
        for b in range(a + 1, len(perm)):
            if perm[b] < perm[a] and parities[perm[b]]:
                odd ^= 1
    return -1 if odd else 1


def shuffle(objs: Sequence[VectObject], perm: Sequence[int], braid: str = "symmetric",
            field: Field = QQ) -> Matrix:
    """Matrix of ``X_0 (x) ... (x) X_{n-1} -> X_{perm[0]} (x) ... (x) X_{perm[n-1]}``.

    The output's ``k``-th factor is the input's ``perm[k]``-th factor.  Under
    the super braiding each basis vector picks up its Koszul sign.
    """
    if sorted(perm) != list(range(len(objs))):
        raise ValueError(f"{perm!r} is not a permutation of {len(objs)} factors")
    if braid not in BRAIDINGS:
        raise ValueError(f"unknown braiding {braid!r}")
    dims = [o.dim for o in objs]
    n = 1
    for d in dims:
        n *= d
    out_dims = [dims[p] for p in perm]
    out_strides = _strides(out_dims)
    pos_in_out = [0] * len(perm)
    for k, p in enumerate(perm):
        pos_in_out[p] = k
    signed = braid == "super" and any(any(o.parity) for o in objs)
    one = field.norm(1)
    minus = field.norm(-1)
    data = {}
    for col, idx in enumerate(product(*[range(d) for d in dims])):
        row = 0
        for f, i in enumerate(idx):
            row += i * out_strides[pos_in_out[f]]
        if signed:
            pars = [objs[f].parity[i] for f, i in enumerate(idx)]
            s = koszul_sign(pars, perm)
            data[row] = {col: one if s == 1 else minus}
        else:
            data[row] = {col: one}
    return Matrix(n, n, data, field)


def permute_rows(objs: Sequence[VectObject], perm: Sequence[int], mat: Matrix,
                 braid: str = "symmetric") -> Matrix:
    """``shuffle(objs, perm, braid) @ mat`` without building the permutation."""
    if sorted(perm) != list(range(len(objs))):
        raise ValueError(f"{perm!r} is not a permutation of {len(objs)} factors")
    dims = [o.dim for o in objs]
    in_strides = _strides(dims)
    out_strides = _strides([dims[p] for p in perm])
    pos_in_out = [0] * len(perm)
    for k, p in enumerate(perm):
        pos_in_out[p] = k
    signed = braid == "super" and any(not o.trivially_graded for o in objs)
    field = mat.field
    data = {}
    for r, row in mat.iter_rows():
        new = 0
        idx = []
        for f, st in enumerate(in_strides):
            i = (r // st) % dims[f]
            idx.append(i)
            new += i * out_strides[pos_in_out[f]]
        if signed and koszul_sign([objs[f].parity[i] for f, i in enumerate(idx)], perm) < 0:
            data[new] = {j: field.norm(-v) for j, v in row.items()}
        else:
            data[new] = dict(row)
    return Matrix(mat.nrows, mat.ncols, data, field)


def _strides(dims: Sequence[int]) -> list[int]:
    strides = [1] * len(dims)
    acc = 1
    for k in range(len(dims) - 1, -1, -1):
        strides[k] = acc
        acc *= dims[k]
    return strides


def braiding(x: VectObject, y: VectObject, kind: str = "symmetric",
             field: Field = QQ) -> MorphismV:
    """``c_{X,Y} : X (x) Y -> Y (x) X``.

    Over a field of characteristic 2 the super signs collapse and both
    kinds give the same matrix; this is accepted, not an error.
    """
    mat = shuffle([x, y], [1, 0], kind, field)
    return MorphismV(tensor_objects(x, y), tensor_objects(y, x), mat)


def internal_hom(x: VectObject, z: VectObject, field: Field = QQ) -> tuple[VectObject, MorphismV]:
    """Right internal hom ``Z^X`` with evaluation ``X (x) Z^X -> Z``.

    ``Z^X`` has the matrix units ``e_{ij}`` (sending ``x_j`` to ``z_i``) as
    basis, ordered row-major, so ``e_{ij}`` has index ``i * dim(X) + j``.
    Evaluation is ``x_k (x) e_{ij} -> delta_{jk} z_i``.
    """
    parity = tuple((z.parity[i] + x.parity[j]) % 2 for i in range(z.dim) for j in range(x.dim))
    hom = VectObject(z.dim * x.dim, parity)
    one = field.norm(1)
    data: dict[int, dict[int, int]] = {}
    for k in range(x.dim):
        for i in range(z.dim):
            col = k * hom.dim + i * x.dim + k
            data.setdefault(i, {})[col] = one
    ev = MorphismV(tensor_objects(x, hom), z, Matrix(z.dim, x.dim * hom.dim, data, field))
    return hom, ev
