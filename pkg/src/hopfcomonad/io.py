"""JSON structure documents, report documents and certificates.

Every document is a UTF-8 JSON object with ``schema_version``, ``field``
and ``kind``.  Matrices are row-major lists of rows of scalar strings
(``"a/b"`` in lowest terms over QQ, residues in ``[0, p)`` over GF(p)); the
row index is the codomain index and tensor bases use ``(i, j) -> i*dim(Y)+j``.
Output is serialized with sorted keys so equal values give equal bytes.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from .comod import Comodule, make_comodule
from .errors import ParseError, ShapeMismatch
from .linalg import QQ, Field, Matrix, parse_field
from .modules import ModuleOverBimonoid, make_module
from .report import Report
from .structures import Bimonoid, Comonoid, Monoid, make_comonoid, make_monoid
from .vect import VectObject

SCHEMA_VERSION = "1"
KINDS = ("comonoid", "monoid", "bimonoid", "module", "comodule", "quantum", "antipode")
BRAIDS = ("symmetric", "super")
FIELD_ENV = "HOPFCOMONAD_FIELD"

Structure = Comonoid | Monoid | Bimonoid | ModuleOverBimonoid | Comodule


# -- fields and scalars -------------------------------------------------------

def field_spec(f: Field) -> str:
    return "rational" if f.p is None else f"prime:{f.p}"


def default_field() -> Field:
    text = os.environ.get(FIELD_ENV)
    if not text:
        return QQ
    try:
        return parse_field(text)
    except ValueError as exc:
        raise ParseError(f"{FIELD_ENV}={text!r} is not a field") from exc


def resolve_field(doc: dict[str, Any], override: Field | None) -> Field:
    """``--field`` beats the document, which beats the environment default."""
    if override is not None:
        return override
    if "field" in doc:
        spec = doc["field"]
        if not isinstance(spec, str):
            raise ParseError(f"field: expected a string, got {json.dumps(spec)}")
        try:
            return parse_field(spec)
        except ValueError as exc:
            raise ParseError(f"field: unrecognised token {spec!r}") from exc
    return default_field()


def _scalar(token: object, f: Field, where: str) -> object:
    if isinstance(token, bool) or not isinstance(token, (str, int)):
        raise ParseError(f"{where}: {json.dumps(token)} is not an exact scalar")
    try:
        return f.coerce(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {json.dumps(token)} is not a scalar over {f.label()}") from exc


def parse_matrix(raw: object, nrows: int, ncols: int, f: Field, name: str) -> Matrix:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise ParseError(f"{name}: expected a list of rows")
    if len(raw) != nrows:
        raise ShapeMismatch(f"{name}: {len(raw)} rows, expected {nrows}x{ncols}")
    for i, r in enumerate(raw):
        if len(r) != ncols:
            raise ShapeMismatch(f"{name}[{i}]: {len(r)} entries, expected {nrows}x{ncols}")
    rows = [[_scalar(tok, f, f"{name}[{i}][{j}]") for j, tok in enumerate(r)]
            for i, r in enumerate(raw)]
    return Matrix.from_rows(rows, f, ncols=ncols)


def format_matrix(m: Matrix) -> list[list[str]]:
    f = m.field
    return [[f.format(x) for x in row] for row in m.to_rows()]


# -- structure documents -----------------------------------------------------

def _require(doc: dict[str, Any], key: str, kind: str) -> Any:
    if key not in doc:
        raise ParseError(f"{kind} document is missing {key!r}")
    return doc[key]


def _dim(doc: dict[str, Any], kind: str) -> int:
    d = _require(doc, "dim", kind)
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ParseError(f"dim: {json.dumps(d)} is not a positive integer")
    return d


def _carrier(doc: dict[str, Any], kind: str) -> VectObject:
    d = _dim(doc, kind)
    parity = doc.get("parity")
    if parity is None:
        return VectObject.even(d)
    if not isinstance(parity, list) or any(p not in (0, 1) or isinstance(p, bool) for p in parity):
        raise ParseError(f"parity: {json.dumps(parity)} is not a list of 0/1")
    if len(parity) != d:
        raise ShapeMismatch(f"parity: length {len(parity)}, expected {d}")
    return VectObject(d, tuple(parity))


def _braid(doc: dict[str, Any]) -> str:
    b = doc.get("braiding", "symmetric")
    if b not in BRAIDS:
        raise ParseError(f"braiding: unrecognised token {json.dumps(b)}")
    return b


def _carrier_fields(x: VectObject) -> dict[str, Any]:
    out: dict[str, Any] = {"dim": x.dim}
    if not x.trivially_graded:
        out["parity"] = list(x.parity)
    return out


def _comonoid(doc: dict[str, Any], f: Field) -> Comonoid:
    x = _carrier(doc, "comonoid")
    n = x.dim
    delta = parse_matrix(_require(doc, "delta", "comonoid"), n * n, n, f, "delta")
    eps = parse_matrix(_require(doc, "epsilon", "comonoid"), 1, n, f, "epsilon")
    return make_comonoid(x, delta, eps, doc.get("name", ""))


def _monoid(doc: dict[str, Any], f: Field) -> Monoid:
    x = _carrier(doc, "monoid")
    n = x.dim
    mu = parse_matrix(_require(doc, "mu", "monoid"), n, n * n, f, "mu")
    eta = parse_matrix(_require(doc, "eta", "monoid"), n, 1, f, "eta")
    return make_monoid(x, mu, eta, doc.get("name", ""))


def _bimonoid(doc: dict[str, Any], f: Field) -> Bimonoid:
    name = doc.get("name", "")
    return Bimonoid(_comonoid(doc, f), _monoid(doc, f), _braid(doc), name)


def _nested(doc: dict[str, Any], key: str, kind: str, f: Field) -> Any:
    sub = _require(doc, key, kind)
    if not isinstance(sub, dict):
        raise ParseError(f"{key}: expected an inline document")
    # inline documents inherit the outer schema version and field
    return structure_from_doc({"schema_version": SCHEMA_VERSION, **sub}, f)


def _module(doc: dict[str, Any], f: Field, h: Bimonoid | None) -> ModuleOverBimonoid:
    if h is None:
        if "bimonoid" not in doc:
            raise ParseError("module document has no 'bimonoid' and none was supplied")
        h = _nested(doc, "bimonoid", "module", f)
        if not isinstance(h, Bimonoid):
            raise ParseError("module: 'bimonoid' is not a bimonoid document")
    x = _carrier(doc, "module")
    action = parse_matrix(_require(doc, "action", "module"), x.dim, h.dim * x.dim, f, "action")
    return make_module(h, x, action, doc.get("name", ""))


def _comodule(doc: dict[str, Any], f: Field) -> Comodule:
    src = _nested(doc, "source", "comodule", f)
    tgt = _nested(doc, "target", "comodule", f)
    for key, c in (("source", src), ("target", tgt)):
        if not isinstance(c, Comonoid):
            raise ParseError(f"comodule: {key!r} is not a comonoid document")
    x = _carrier(doc, "comodule")
    gamma = parse_matrix(_require(doc, "coaction", "comodule"), src.dim * x.dim * tgt.dim, x.dim,
                         f, "coaction")
    return make_comodule(src, tgt, x, gamma, doc.get("name", "M"), _braid(doc))


def structure_from_doc(doc: object, override: Field | None = None,
                       bimonoid: Bimonoid | None = None) -> Any:
    """Parse a comonoid/monoid/bimonoid/module/comodule document.

    Quantum and antipode documents are returned as validated dicts; see
    :func:`quantum_from_doc` and :func:`antipode_from_doc`.
    """
    if not isinstance(doc, dict):
        raise ParseError("document is not a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"schema_version: unsupported value {json.dumps(version)}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"kind: unrecognised token {json.dumps(kind)}")
    f = resolve_field(doc, override)
    if kind == "comonoid":
        return _comonoid(doc, f)
    if kind == "monoid":
        return _monoid(doc, f)
    if kind == "bimonoid":
        return _bimonoid(doc, f)
    if kind == "module":
        return _module(doc, f, bimonoid)
    if kind == "comodule":
        return _comodule(doc, f)
    return doc


def base(kind: str, f: Field, name: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "kind": kind, "field": field_spec(f)}
    if name:
        out["name"] = name
    return out


def comonoid_to_doc(c: Comonoid) -> dict[str, Any]:
    doc = base("comonoid", c.field, c.name)
    doc.update(_carrier_fields(c.carrier))
    doc["delta"] = format_matrix(c.delta.mat)
    doc["epsilon"] = format_matrix(c.epsilon.mat)
    return doc


def monoid_to_doc(m: Monoid) -> dict[str, Any]:
    doc = base("monoid", m.field, m.name)
    doc.update(_carrier_fields(m.carrier))
    doc["mu"] = format_matrix(m.mu.mat)
    doc["eta"] = format_matrix(m.eta.mat)
    return doc


def bimonoid_to_doc(h: Bimonoid) -> dict[str, Any]:
    doc = base("bimonoid", h.field, h.name)
    doc.update(_carrier_fields(h.carrier))
    doc["braiding"] = h.braiding
    for key in ("mu", "eta", "delta", "epsilon"):
        doc[key] = format_matrix(getattr(h, key))
    return doc


def module_to_doc(m: ModuleOverBimonoid, *, embed: bool = True) -> dict[str, Any]:
    doc = base("module", m.bimonoid.field, m.name)
    doc.update(_carrier_fields(m.carrier))
    doc["action"] = format_matrix(m.action.mat)
    if embed:
        doc["bimonoid"] = bimonoid_to_doc(m.bimonoid)
    return doc


def comodule_to_doc(m: Comodule) -> dict[str, Any]:
    doc = base("comodule", m.field, m.name)
    doc.update(_carrier_fields(m.carrier))
    doc["braiding"] = m.braid
    doc["source"] = comonoid_to_doc(m.src)
    doc["target"] = comonoid_to_doc(m.tgt)
    doc["coaction"] = format_matrix(m.coaction.mat)
    return doc


def structure_to_doc(x: Structure) -> dict[str, Any]:
    if isinstance(x, Bimonoid):
        return bimonoid_to_doc(x)
    if isinstance(x, Comonoid):
        return comonoid_to_doc(x)
    if isinstance(x, Monoid):
        return monoid_to_doc(x)
    if isinstance(x, ModuleOverBimonoid):
        return module_to_doc(x)
    if isinstance(x, Comodule):
        return comodule_to_doc(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


# -- quantum and certificate documents ---------------------------------------

def quantum_to_doc(construction: str, inner: dict[str, Any], f: Field, name: str = "",
                   braiding: str = "symmetric") -> dict[str, Any]:
    """``construction`` is ``"bimonoid"`` (inner bimonoid) or ``"identity"`` (inner comonoid)."""
    doc = base("quantum", f, name)
    doc["construction"] = construction
    doc["braiding"] = braiding
    doc["bimonoid" if construction == "bimonoid" else "comonoid"] = inner
    return doc


def quantum_from_doc(doc: dict[str, Any], override: Field | None = None):
    from .monoidale import enveloping_monoidale
    from .quantum import from_bimonoid, identity_comonad

    f = resolve_field(doc, override)
    construction = doc.get("construction")
    if construction == "bimonoid":
        h = _nested(doc, "bimonoid", "quantum", f)
        if not isinstance(h, Bimonoid):
            raise ParseError("quantum: 'bimonoid' is not a bimonoid document")
        return from_bimonoid(h)
    if construction == "identity":
        c = _nested(doc, "comonoid", "quantum", f)
        if not isinstance(c, Comonoid) or isinstance(c, Bimonoid):
            raise ParseError("quantum: 'comonoid' is not a comonoid document")
        return identity_comonad(enveloping_monoidale(c, _braid(doc)))
    raise ParseError(f"construction: unrecognised token {json.dumps(construction)}")


def antipode_to_doc(h: Bimonoid, s: Matrix) -> dict[str, Any]:
    doc = base("antipode", h.field, h.name)
    doc["dim"] = h.dim
    doc["antipode"] = format_matrix(s)
    return doc


def antipode_from_doc(doc: dict[str, Any], override: Field | None = None) -> Matrix:
    f = resolve_field(doc, override)
    n = _dim(doc, "antipode")
    return parse_matrix(_require(doc, "antipode", "antipode"), n, n, f, "antipode")


# -- reports -------------------------------------------------------------------

def report_to_doc(command: str, report: Report, verdict: dict[str, Any], f: Field,
                  extra: dict[str, Any] | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "subject": report.subject,
        "field": field_spec(f),
        "verdict": verdict,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        "certificates": {k: format_matrix(m) for k, m in sorted(report.certificates.items())},
    }
    if extra:
        doc.update(extra)
    return doc


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: document is not a JSON object")
    return doc


def save(doc: dict[str, Any], path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
