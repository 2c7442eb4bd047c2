"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 budget exceeded,
3 malformed input, 4 internal invariant breach.
"""
import argparse
import json
import sys

from . import __version__
from .config import EnumerationBudget, default_budget
from .errors import FieldMismatch, MalformedDocument, NijlieError
from .exactmath import GF, QQ, same_field
from .report import Report
from . import serialize as ser

EXIT = {"validation": 1, "budget": 2, "input": 3, "internal": 4}


class Ctx:
    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.budget = EnumerationBudget(args.budget) if args.budget else default_budget()
        self.field = parse_field(args.field) if args.field else None

    def load(self, path, validate=True):
        doc = ser.load(path, validate)
        if self.field is not None and not same_field(self.field, doc.field):
            raise FieldMismatch(f"--field {self.args.field} but document is over {doc.field!r}")
        return doc

    def emit_report(self, rep):
        if self.args.format == "data":
            self.out.write(ser.dumps_data(rep.to_data()))
        else:
            self.out.write(rep.summary() + "\n")

    def emit_data(self, data, text):
        if self.args.format == "data":
            self.out.write(ser.dumps_data(data))
        else:
            self.out.write(text.rstrip("\n") + "\n")

    def emit_doc(self, doc):
        self.out.write(doc.dumps())


def parse_field(s):
    s = s.strip()
    if s.upper() in ("Q", "QQ"):
        return QQ
    t = s.upper().removeprefix("F").removeprefix("P").removeprefix("_")
    try:
        return GF(int(t))
    except ValueError as e:
        raise MalformedDocument(f"bad field {s!r}: {e}")


def _get(doc, name, kind):
    obj = doc[name]
    k = ser.kind_of(obj)
    if isinstance(kind, str):
        kind = (kind,)
    if k not in kind:
        raise MalformedDocument(f"{name!r} is a {k}, expected {' or '.join(kind)}")
    return obj


# ---------------------------------------------------------------- commands

def cmd_check(c):
    doc = c.load(c.args.file, validate=False)
    names = [c.args.object] if c.args.object else doc.names()
    rep = Report("check")
    for n in names:
        r = ser.validate_object(doc[n])
        rep.flags[n] = "ok" if r.ok else "FAIL"
        rep.extend(r, n)
    c.emit_report(rep)
    return 0 if rep.ok else 1


def cmd_deform(c):
    from .nijenhuis import deformed_algebra
    doc = c.load(c.args.file)
    G = _get(doc, c.args.object, "nijenhuis")
    LN = deformed_algebra(G)
    out = ser.Document(doc.field)
    out.add(f"{c.args.object}_N", LN)
    c.emit_doc(out)
    return 0


def cmd_h2(c):
    from .cohomology import compute_H2
    doc = c.load(c.args.file)
    R = _get(doc, c.args.context, "nij_representation")
    H = compute_H2(R)
    out = ser.Document(doc.field)
    out.add(c.args.context, R)
    for k, r in enumerate(H.representatives):
        out.add(f"class{k}", r)
    data = {"dim": H.dim, "cocycle_space_dim": H.Z.dim, "coboundary_dim": H.B.dim, "document": out.to_data()}
    text = f"dim H2 = {H.dim}\ndim Z = {H.Z.dim}\ndim B = {H.B.dim}\n" + out.dumps()
    c.emit_data(data, text)
    return 0


def cmd_extend(c):
    from .extensions import build_extension
    doc = c.load(c.args.file)
    co = _get(doc, c.args.cocycle, ("cocycle_nab", "cocycle_ab"))
    if ser.kind_of(co) == "cocycle_ab":
        co = co.as_nonabelian()
    E = build_extension(co)
    out = ser.Document(doc.field)
    out.add(f"{c.args.cocycle}_ext", E)
    c.emit_doc(out)
    return 0


def cmd_extract(c):
    from .extensions import abelian_cocycle, extract_cocycle
    doc = c.load(c.args.file)
    E = _get(doc, c.args.extension, "extension")
    s = _get(doc, c.args.section, "linear_map") if c.args.section else None
    co = extract_cocycle(E, s)
    out = ser.Document(doc.field)
    out.add(f"{c.args.extension}_cocycle", co)
    if E.kernel.algebra.is_abelian():
        out.add(f"{c.args.extension}_abelian", abelian_cocycle(E, s))
    c.emit_doc(out)
    return 0


def cmd_equiv(c):
    from .cohomology import search_equivalence
    doc = c.load(c.args.file)
    a = _get(doc, c.args.a, ("cocycle_nab", "cocycle_ab"))
    b = _get(doc, c.args.b, ("cocycle_nab", "cocycle_ab"))
    if ser.kind_of(a) == "cocycle_ab":
        a = a.as_nonabelian()
    if ser.kind_of(b) == "cocycle_ab":
        b = b.as_nonabelian()
    res = search_equivalence(a, b, c.budget)
    F = doc.field
    data = {"found": res.found, "method": res.method, "candidates": res.candidates,
            "witness": None if res.phi is None else ser.matrix_to_data(F, res.phi)}
    text = (f"equivalent: {'yes' if res.found else 'no (NotFound)'}\nmethod: {res.method}\n"
            f"candidates: {res.candidates}\n")
    if res.found:
        text += "witness: " + json.dumps(data["witness"]) + "\n"
    c.emit_data(data, text)
    return 0


def _wells_text(w):
    lines = [f"kind: {w.kind}", f"method: {w.method}", f"compatible: {w.compatible}", f"inducible: {w.inducible}"]
    d = w.to_data()
    for k in ("obstruction", "witness", "lift"):
        if d[k] is not None:
            lines.append(f"{k}: {json.dumps(d[k])}")
    if w.candidates:
        lines.append(f"candidates: {w.candidates}")
    return "\n".join(lines)


def cmd_wells(c):
    from .inducibility import AutPair, DerPair, wells_aut, wells_der
    doc = c.load(c.args.file)
    E = _get(doc, c.args.extension, "extension")
    P = _get(doc, c.args.pair, "pair")
    s = _get(doc, c.args.section, "linear_map") if c.args.section else None
    if c.args.kind == "aut":
        if not isinstance(P, AutPair):
            raise MalformedDocument(f"{c.args.pair!r} is not an automorphism pair")
        w = wells_aut(E, P, s, c.budget, method=c.args.method)
    else:
        if not isinstance(P, DerPair):
            raise MalformedDocument(f"{c.args.pair!r} is not a derivation pair")
        w = wells_der(E, P, s)
    c.emit_data(w.to_data(), _wells_text(w))
    return 0


def cmd_sequence(c):
    from .inducibility import wells_sequence_aut_check, wells_sequence_der_check
    doc = c.load(c.args.file)
    E = _get(doc, c.args.extension, "extension")
    if c.args.kind == "aut":
        rep = wells_sequence_aut_check(E, None, c.budget)
    else:
        rep = wells_sequence_der_check(E, None, c.budget)
    c.emit_report(rep)
    return 0 if rep.ok else 1


def cmd_oracle(c):
    from . import oracle as O
    a = c.args
    if a.action == "fixtures":
        if a.output:
            fx = O.write_fixtures(a.output, c.budget)
        else:
            fx = O.generate_fixtures(c.budget)
        c.out.write(ser.dumps_data(fx))
        return 0
    if a.action == "check-fixtures":
        fresh = O.generate_fixtures(c.budget)
        frozen = O.load_fixtures(a.output) if a.output else O.load_fixtures()
        rep = Report("fixtures")
        for k in sorted(set(fresh) | set(frozen)):
            if fresh.get(k) != frozen.get(k):
                rep.add("mismatch", (k,), frozen.get(k), fresh.get(k))
        c.emit_report(rep)
        return 0 if rep.ok else 1
    if a.action == "nijenhuis":
        doc = c.load(a.file)
        L = _get(doc, a.object, "lie_algebra")
        ops = O.enumerate_nijenhuis(L, c.budget)
        F = doc.field
        data = {"count": len(ops), "operators": [ser.matrix_to_data(F, N) for N in ops]}
        c.emit_data(data, f"count: {len(ops)}")
        return 0
    if a.action == "sweep":
        shapes = [tuple(int(x) for x in s.split("x")) for s in a.shapes.split(",")]
        rep = Report(f"sweep_{a.kind}")
        tot = {}
        k = 0
        for inst in O.sweep(a.p, shapes, c.budget):
            if a.kind == "der" and inst.ctx.Ch.any():
                continue
            r = O.exhaustive_inducibility_crosscheck(inst.ctx, inst.cocycle, a.kind, c.budget)
            k += 1
            for key, v in r.items():
                tot[key] = tot.get(key, 0) + v
            if r["disagreements"]:
                rep.add("disagreement", (k,), r["disagreements"], 0)
        rep.flags["extensions"] = k
        rep.flags.update(tot)
        c.emit_report(rep)
        return 0 if rep.ok else 1
    if a.action == "bijection":
        shapes = [tuple(int(x) for x in s.split("x")) for s in a.shapes.split(",")]
        rep = Report("bijection")
        k = 0
        for n, m in shapes:
            for ctx in O.contexts(a.p, n, m, c.budget):
                r = O.bijection_check(ctx, c.budget)
                k += 1
                if not r["ok"]:
                    rep.add("bijection", (n, m, k), r["cocycle_classes"], r["extension_classes"])
        rep.flags["contexts"] = k
        c.emit_report(rep)
        return 0 if rep.ok else 1
    raise MalformedDocument(f"unknown oracle action {a.action}")


CATALOG = ("aff1", "sl2", "heisenberg", "so3", "abelian", "identity-nijenhuis", "adjoint", "split-extension",
           "complex-aff1")


def _catalog_algebra(name, F, dim):
    from . import catalog as cat
    if name == "abelian":
        return cat.abelian(F, dim if dim is not None else 1)
    fn = {"aff1": cat.aff1, "sl2": cat.sl2, "heisenberg": cat.heisenberg, "so3": cat.so3}[name]
    return fn(F)


def cmd_catalog(c):
    from . import catalog as cat
    from .extensions import split_extension
    a = c.args
    F = c.field or QQ
    out = ser.Document(F)
    if a.name in ("aff1", "sl2", "heisenberg", "so3", "abelian"):
        out.add(a.name, _catalog_algebra(a.name, F, a.dim))
    elif a.name == "identity-nijenhuis":
        L = _catalog_algebra(a.algebra, F, a.dim)
        if a.dim is not None and L.dim != a.dim:
            raise MalformedDocument(f"{a.algebra} has dimension {L.dim}, not {a.dim}")
        out.add("g", L)
        out.add("G", cat.identity_nijenhuis(F, L))
    elif a.name in ("adjoint", "split-extension"):
        L = _catalog_algebra(a.algebra, F, a.dim)
        G = cat.identity_nijenhuis(F, L)
        R = cat.adjoint_nij_representation(G)
        out.add("g", L)
        out.add("G", G)
        if a.name == "adjoint":
            out.add("R", R)
        else:
            out.add("E", split_extension(R))
    elif a.name == "complex-aff1":
        if F != QQ:
            raise FieldMismatch("complex-aff1 is defined over Q")
        L, j = cat.complex_aff1()
        out.add("g", L)
        out.add("G", cat.complex_structure_check(L, j))
    c.emit_doc(out)
    return 0


# ---------------------------------------------------------------- parser

def build_parser():
    ap = argparse.ArgumentParser(prog="nijlie", description="Exact computations for Nijenhuis Lie algebras.")
    ap.add_argument("--version", action="version", version=f"nijlie {__version__}")
    ap.add_argument("--budget", type=int, default=None, help="max candidates for exhaustive searches")
    ap.add_argument("--field", default=None, help="Q or Fp (e.g. F2); documents must match")
    ap.add_argument("--format", choices=("report", "data"), default="report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate objects of a document")
    p.add_argument("file")
    p.add_argument("--object")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("deform", help="deformed Lie algebra of a Nijenhuis algebra")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    p.set_defaults(fn=cmd_deform)

    p = sub.add_parser("h2", help="second cohomology of a Nijenhuis representation")
    p.add_argument("file")
    p.add_argument("--context", required=True)
    p.set_defaults(fn=cmd_h2)

    p = sub.add_parser("extend", help="extension built from a cocycle")
    p.add_argument("file")
    p.add_argument("--cocycle", required=True)
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("extract", help="cocycle of an extension with respect to a section")
    p.add_argument("file")
    p.add_argument("--extension", required=True)
    p.add_argument("--section")
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("equiv", help="decide equivalence of two cocycles")
    p.add_argument("file")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("wells", help="inducibility of an automorphism or derivation pair")
    p.add_argument("kind", choices=("aut", "der"))
    p.add_argument("file")
    p.add_argument("--extension", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--section")
    p.add_argument("--method", choices=("auto", "exhaustive"), default="auto")
    p.set_defaults(fn=cmd_wells)

    p = sub.add_parser("sequence", help="exactness of the Wells sequence")
    p.add_argument("kind", choices=("aut", "der"))
    p.add_argument("file")
    p.add_argument("--extension", required=True)
    p.set_defaults(fn=cmd_sequence)

    p = sub.add_parser("oracle", help="enumeration sweeps and fixtures")
    p.add_argument("action", choices=("fixtures", "check-fixtures", "nijenhuis", "sweep", "bijection"))
    p.add_argument("file", nargs="?")
    p.add_argument("--object")
    p.add_argument("--output", help="fixture file (write for 'fixtures', read for 'check-fixtures')")
    p.add_argument("--kind", choices=("aut", "der"), default="aut")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--shapes", default="1x1,2x1,1x2", help="comma separated dim(g)xdim(h)")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("catalog", help="emit a documented example instance")
    p.add_argument("name", choices=CATALOG)
    p.add_argument("--dim", type=int)
    p.add_argument("--algebra", default="abelian", choices=("aff1", "sl2", "heisenberg", "so3", "abelian"))
    p.set_defaults(fn=cmd_catalog)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        c = Ctx(args, out)
        if args.command == "oracle" and args.action == "nijenhuis" and not (args.file and args.object):
            raise MalformedDocument("oracle nijenhuis needs a file and --object")
        return args.fn(c)
    except NijlieError as e:
        sys.stderr.write(f"error ({e.category}): {type(e).__name__}: {e}\n")
        return EXIT.get(e.category, 4)
    except Exception as e:  # anything unexpected is treated as an internal breach
        sys.stderr.write(f"error (internal): {type(e).__name__}: {e}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
