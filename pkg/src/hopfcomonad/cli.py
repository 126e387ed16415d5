"""Command-line front end.

Exit codes: 0 = pass / true, 1 = well-formed negative verdict, 2 = invalid
input or internal error.  Every positional structure argument is a JSON
document path or the name of a built-in corpus member.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable

from . import io
from .comod import Comodule, check_comodule, compose_comodules, identity_comodule
from .corpus import bimonoid_corpus, comonoid_corpus, module_corpus
from .errors import HopfError, Inconsistent, NoAntipode, NotHopf, ParseError
from .fusion import SIDES, check_antipode, extract_antipode, fusion_operator
from .linalg import Field, mat_inverse, is_invertible, parse_field
from .modules import ModuleOverBimonoid, check_ev_morphism, check_module, lift_internal_hom
from .monoidale import check_monoidale, enveloping_monoidale
from .quantum import QuantumCategoryData, check_quantum_category, from_bimonoid, identity_comonad, is_quantum_groupoid
from .report import Report
from .structures import Bimonoid, Comonoid, Monoid, check_bimonoid, check_comonoid, check_monoid


class Outcome:
    """What a subcommand hands back to the dispatcher."""

    def __init__(self, command: str, report: Report, verdict: dict[str, Any], field: Field,
                 ok: bool, extra: dict[str, Any] | None = None):
        self.command = command
        self.report = report
        self.verdict = verdict
        self.field = field
        self.ok = ok
        self.extra = extra or {}


# -- argument resolution ------------------------------------------------------

def _field(args: argparse.Namespace) -> Field | None:
    text = getattr(args, "field", None)
    if text is None:
        return None
    try:
        return parse_field(text)
    except ValueError as exc:
        raise ParseError(f"--field: unrecognised token {text!r}") from exc


def _effective_field(args: argparse.Namespace) -> Field:
    return _field(args) or io.default_field()


def _load(arg: str, args: argparse.Namespace, bimonoid: Bimonoid | None = None) -> Any:
    """A document path or a corpus name, parsed into a structure (or quantum dict)."""
    override = _field(args)
    if Path(arg).is_file():
        doc = io.load(arg)
        return io.structure_from_doc(doc, override, bimonoid)
    f = override or io.default_field()
    bims = bimonoid_corpus(f)
    if arg in bims:
        return bims[arg]
    coms = comonoid_corpus(f)
    if arg in coms:
        return coms[arg]
    if arg.startswith("identity_") and arg[len("identity_"):] in coms:
        return identity_comodule(coms[arg[len("identity_"):]])
    if bimonoid is not None:
        for name, h in bims.items():
            if h == bimonoid:
                mods = module_corpus(name, h)
                if arg in mods:
                    return mods[arg]
    raise ParseError(f"{arg!r} is neither a readable file nor a corpus name")


def _expect(x: Any, cls: type, arg: str) -> Any:
    if not isinstance(x, cls) or (cls is Comonoid and isinstance(x, Bimonoid)):
        raise ParseError(f"{arg}: expected a {cls.__name__.lower()} document")
    return x


# -- subcommands ------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> Outcome:
    x = _load(args.file, args)
    if isinstance(x, dict):
        if x.get("kind") == "quantum":
            return _quantum(args, groupoid=False)
        raise ParseError(f"check: kind {x.get('kind')!r} has no checker")
    if isinstance(x, Bimonoid):
        kind, r = "bimonoid", check_bimonoid(x)
    elif isinstance(x, Comonoid):
        kind, r = "comonoid", check_comonoid(x)
    elif isinstance(x, Monoid):
        kind, r = "monoid", check_monoid(x)
    elif isinstance(x, ModuleOverBimonoid):
        kind, r = "module", check_module(x)
    else:
        kind, r = "comodule", check_comodule(x)
    f = x.bimonoid.field if isinstance(x, ModuleOverBimonoid) else x.field
    return Outcome("check", r, {"kind": kind, "passed": r.passed}, f, r.passed)


def cmd_fusion(args: argparse.Namespace) -> Outcome:
    h = _expect(_load(args.file, args), Bimonoid, args.file)
    op = fusion_operator(h, args.side)
    r = Report(f"{args.side} fusion operator of {h.name}".strip())
    m = op.mat
    inv = is_invertible(m)
    r.add("invertible", inv, "" if inv else f"rank {m.rank()} < {m.nrows}")
    if args.emit_matrix:
        r.certificates["fusion"] = m
        if inv:
            r.certificates["fusion_inverse"] = mat_inverse(m)
    return Outcome("fusion", r, {"side": args.side, "invertible": inv, "rank": m.rank()}, h.field, inv)


def cmd_hopf(args: argparse.Namespace) -> Outcome:
    h = _expect(_load(args.file, args), Bimonoid, args.file)
    m = fusion_operator(h, "paper46").mat
    verdict = is_invertible(m)
    r = Report(f"right Hopf {h.name}".strip())
    r.add("fusion operator invertible", verdict, "" if verdict else f"rank {m.rank()} < {m.nrows}")
    return Outcome("hopf", r, {"right_hopf": verdict}, h.field, verdict)


def cmd_antipode(args: argparse.Namespace) -> Outcome:
    h = _expect(_load(args.file, args), Bimonoid, args.file)
    r = Report(f"antipode of {h.name}".strip())
    try:
        cert = extract_antipode(h)
    except NoAntipode as exc:
        r.add("convolution system solvable", False, str(exc))
        return Outcome("antipode", r, {"antipode_exists": False}, h.field, False)
    r.add("convolution system solvable", True)
    r.extend(check_antipode(h, cert.s))
    r.certificates["antipode"] = cert.s.mat
    if args.output:
        io.save(io.antipode_to_doc(h, cert.s.mat), args.output)
    return Outcome("antipode", r, {"antipode_exists": True}, h.field, r.passed)


def cmd_check_antipode(args: argparse.Namespace) -> Outcome:
    h = _expect(_load(args.bimonoid, args), Bimonoid, args.bimonoid)
    doc = io.load(args.certificate)
    if doc.get("kind") != "antipode":
        raise ParseError(f"{args.certificate}: kind is {doc.get('kind')!r}, expected 'antipode'")
    s = io.antipode_from_doc(doc, _field(args) or h.field)
    r = check_antipode(h, s)
    return Outcome("check-antipode", r, {"passed": r.passed}, h.field, r.passed)


def cmd_lift_hom(args: argparse.Namespace) -> Outcome:
    h = _expect(_load(args.bimonoid, args), Bimonoid, args.bimonoid)
    am = _expect(_load(args.module_a, args, h), ModuleOverBimonoid, args.module_a)
    bm = _expect(_load(args.module_b, args, h), ModuleOverBimonoid, args.module_b)
    r = Report(f"lifted hom over {h.name}".strip())
    try:
        lh = lift_internal_hom(am, bm)
    except (NotHopf, Inconsistent) as exc:
        r.add("unique lifted action", False, f"{type(exc).__name__}: {exc}")
        return Outcome("lift-hom", r, {"lifted": False}, h.field, False)
    r.add("unique lifted action", True)
    r.extend(check_ev_morphism(lh, am, bm))
    r.certificates["rho"] = lh.rho.mat
    r.certificates["ev"] = lh.ev.mat
    return Outcome("lift-hom", r, {"lifted": True, "hom_dim": lh.carrier.dim}, h.field, r.passed)


def cmd_compose(args: argparse.Namespace) -> Outcome:
    m = _expect(_load(args.m, args), Comodule, args.m)
    n = _expect(_load(args.n, args), Comodule, args.n)
    k = compose_comodules(m, n)
    r = Report(f"composite {m.name} <> {n.name}")
    r.extend(check_comodule(k), "composite: ")
    r.certificates["embedding"] = k.sub.basis
    r.certificates["coaction"] = k.coaction.mat
    if args.output:
        io.save(io.comodule_to_doc(k), args.output)
    verdict = {"dim": k.dim, "dim_m": m.dim, "dim_n": n.dim}
    return Outcome("compose", r, verdict, k.field, r.passed)


def cmd_monoidale(args: argparse.Namespace) -> Outcome:
    c = _expect(_load(args.file, args), Comonoid, args.file)
    mon = enveloping_monoidale(c, args.braiding)
    r = check_monoidale(mon)
    r.subject = f"monoidale on {c.name}° (x) {c.name}"
    r.certificates["alpha"] = mon.alpha.mat
    r.certificates["lambda"] = mon.lambda_c.mat
    r.certificates["rho"] = mon.rho_c.mat
    verdict = {"passed": r.passed, "braiding": args.braiding, "dim": mon.object.dim}
    return Outcome("monoidale", r, verdict, c.field, r.passed)


def _quantum_data(args: argparse.Namespace) -> QuantumCategoryData:
    x = _load(args.file, args)
    if isinstance(x, dict):
        if x.get("kind") != "quantum":
            raise ParseError(f"{args.file}: kind is {x.get('kind')!r}, expected 'quantum'")
        return io.quantum_from_doc(x, _field(args))
    if isinstance(x, Bimonoid):
        return from_bimonoid(x)
    if isinstance(x, Comonoid):
        return identity_comonad(enveloping_monoidale(x, getattr(args, "braiding", "symmetric")))
    raise ParseError(f"{args.file}: expected a quantum, bimonoid or comonoid document")


def _quantum(args: argparse.Namespace, groupoid: bool) -> Outcome:
    q = _quantum_data(args)
    f = q.g.field
    if not groupoid:
        r = check_quantum_category(q)
        return Outcome("quantum check", r, {"quantum_category": r.passed}, f, r.passed)
    v = is_quantum_groupoid(q)
    r = v.diagnostics
    if v.hopf_matrix is not None:
        r.certificates["hopf_pasting"] = v.hopf_matrix.mat
    verdict = {"quantum_category": v.is_quantum_category, "quantum_groupoid": v.is_quantum_groupoid}
    return Outcome("quantum groupoid", r, verdict, f, v.is_quantum_groupoid)


def cmd_quantum(args: argparse.Namespace) -> Outcome:
    return _quantum(args, groupoid=args.action == "groupoid")


def cmd_corpus(args: argparse.Namespace) -> Outcome:
    out = Path(args.out)
    f = _effective_field(args)
    written = write_corpus(out, f)
    r = Report(f"corpus in {out}")
    for name in written:
        r.add(name, True)
    return Outcome("corpus", r, {"documents": len(written)}, f, True)


def write_corpus(out: Path, f: Field) -> list[str]:
    """Serialize every corpus constructor into ``out``; returns the file names."""
    out.mkdir(parents=True, exist_ok=True)
    docs: dict[str, dict[str, Any]] = {}
    for name, h in bimonoid_corpus(f).items():
        docs[f"{name}.json"] = io.bimonoid_to_doc(h)
        for mname, m in module_corpus(name, h).items():
            docs[f"{name}__{mname}.json"] = io.module_to_doc(m)
        docs[f"quantum__{name}.json"] = io.quantum_to_doc("bimonoid", io.bimonoid_to_doc(h), f,
                                                          f"quantum {name}", h.braiding)
    for name, c in comonoid_corpus(f).items():
        docs[f"{name}.json"] = io.comonoid_to_doc(c)
        docs[f"identity_{name}.json"] = io.comodule_to_doc(identity_comodule(c))
        docs[f"quantum__identity_{name}.json"] = io.quantum_to_doc(
            "identity", io.comonoid_to_doc(c), f, f"identity comonad on {name}")
    for fname, doc in sorted(docs.items()):
        io.save(doc, out / fname)
    return sorted(docs)


# -- dispatch ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("json", "text"), default=argparse.SUPPRESS,
                        help="report format (default json)")
    common.add_argument("--field", default=argparse.SUPPRESS,
                        help=f"override the field, e.g. rational or prime:5 (default from ${io.FIELD_ENV})")
    p = argparse.ArgumentParser(prog="hopfcomonad", parents=[common],
                                description="Exact checks for bimonoids, Hopf monads and quantum groupoids.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable[[argparse.Namespace], Outcome], help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "check the axioms of any structure document")
    sp.add_argument("file")
    sp = add("fusion", cmd_fusion, "fusion operator invertibility")
    sp.add_argument("file")
    sp.add_argument("--side", choices=SIDES, default="paper46")
    sp.add_argument("--emit-matrix", action="store_true")
    sp = add("hopf", cmd_hopf, "right Hopf verdict")
    sp.add_argument("file")
    sp = add("antipode", cmd_antipode, "extract the antipode")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", help="write the antipode certificate here")
    sp = add("check-antipode", cmd_check_antipode, "re-verify an antipode certificate")
    sp.add_argument("bimonoid")
    sp.add_argument("certificate")
    sp = add("lift-hom", cmd_lift_hom, "lift the internal hom of two modules")
    sp.add_argument("bimonoid")
    sp.add_argument("module_a")
    sp.add_argument("module_b")
    sp = add("compose", cmd_compose, "compose two comodules")
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("-o", "--output", help="write the composite comodule here")
    sp = add("monoidale", cmd_monoidale, "check the monoidale C° (x) C")
    sp.add_argument("file")
    sp.add_argument("--braiding", choices=io.BRAIDS, default="symmetric")
    sp = add("quantum", cmd_quantum, "quantum category / groupoid verdicts")
    sp.add_argument("action", choices=("check", "groupoid"))
    sp.add_argument("file")
    sp.add_argument("--braiding", choices=io.BRAIDS, default="symmetric",
                    help="braiding for identity comonads built from a comonoid")
    sp = add("corpus", cmd_corpus, "write the corpus documents")
    sp.add_argument("--out", default="corpus")
    return p


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(io.report_to_doc(outcome.command, outcome.report, outcome.verdict,
                                         outcome.field, outcome.extra))
    lines = [f"{k}: {str(v).lower() if isinstance(v, bool) else v}"
             for k, v in sorted(outcome.verdict.items())]
    lines.append(outcome.report.to_text())
    for name, m in sorted(outcome.report.certificates.items()):
        f = m.field
        lines.append(f"{name}:")
        lines += ["  " + " ".join(f.format(x) for x in row) for row in m.to_rows()]
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    fmt = getattr(args, "report", "json")
    try:
        outcome = args.func(args)
    except HopfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:     # every path must map to an exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(outcome, fmt))
    return 0 if outcome.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
