"""Structured-text documents (JSON) holding named objects over one field.

    {"schema_version": "1",
     "field": {"kind": "Fp", "p": 2},
     "objects": {"g": {"kind": "lie_algebra", "dim": 2, "brackets": [[0, 1, 1, "1"]]},
                 "G": {"kind": "nijenhuis", "algebra": "g", "N": [["1", "0"], ["0", "1"]]}}}

Scalars are strings ("3", "-1/2"); matrices are lists of rows; brackets and
chi are sparse triples [i, j, k, value] with i < j, the alternating closure
applied on load.  Canonical output: sorted keys, sorted triples, indent 2,
trailing newline.
"""
import json

from .errors import DimensionMismatch, MalformedDocument, NijlieError
from .exactmath import Matrix, field_from_tag, zero_vec
from .liecore import LieAlgebra, Representation, check_lie, check_representation
from .nijenhuis import NijenhuisLieAlgebra, NijenhuisRepresentation, check_nij_representation, check_nijenhuis
from .cohomology import AbelianCocycle, Bilinear, NonAbelianCocycle, check_abelian_cocycle, check_nonabelian_cocycle
from .extensions import Extension, check_extension
from .inducibility import AutPair, DerPair

SCHEMA_VERSION = "1"
KINDS = ("lie_algebra", "nijenhuis", "representation", "nij_representation", "cocycle_nab",
         "cocycle_ab", "extension", "linear_map", "pair")


# ---------------------------------------------------------------- scalars / matrices

def _scalar(F, s):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise MalformedDocument(f"scalar must be a string, got {s!r}")
    try:
        return F.parse(str(s))
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedDocument(f"bad scalar {s!r}: {e}")


def matrix_to_data(F, M):
    return [[F.fmt(x) for x in M.row(i)] for i in range(M.rows)]


def matrix_from_data(F, data, rows=None, cols=None):
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise MalformedDocument("matrix must be a list of rows")
    r = len(data)
    c = len(data[0]) if data else (cols or 0)
    if any(len(row) != c for row in data):
        raise MalformedDocument("ragged matrix")
    if rows is not None and r != rows or cols is not None and r and c != cols:
        raise DimensionMismatch(f"matrix shape ({r}, {c}), expected ({rows}, {cols})")
    return Matrix(F, [[_scalar(F, x) for x in row] for row in data], r if r else (rows or 0), c if r else (cols or 0))


def triples_to_data(F, table, n):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k, v in enumerate(table[i][j]):
                if v:
                    out.append([i, j, k, F.fmt(v)])
    return sorted(out)


def triples_from_data(F, n, m, data):
    table = [[list(zero_vec(F, m)) for _ in range(n)] for _ in range(n)]
    if not isinstance(data, list):
        raise MalformedDocument("triples must be a list")
    for t in data:
        if not isinstance(t, list) or len(t) != 4:
            raise MalformedDocument(f"bad triple {t!r}")
        i, j, k, v = t
        if not all(isinstance(a, int) and not isinstance(a, bool) for a in (i, j, k)):
            raise MalformedDocument(f"bad triple indices {t!r}")
        if not (0 <= i < j < n and 0 <= k < m):
            raise MalformedDocument(f"triple {t!r} out of range or not i < j")
        x = _scalar(F, v)
        table[i][j][k] = F.reduce(table[i][j][k] + x)
        table[j][i][k] = F.reduce(-table[i][j][k])
    return table


# ---------------------------------------------------------------- documents

class Document:
    """Named objects over a single field."""

    def __init__(self, field):
        self.field = field
        self.objects = {}

    def __getitem__(self, name):
        try:
            return self.objects[name]
        except KeyError:
            raise MalformedDocument(f"unknown object {name!r}")

    def names(self, kind=None):
        return sorted(k for k, v in self.objects.items() if kind is None or kind_of(v) == kind)

    # -- writing
    def add(self, name, obj):
        """Add obj under name, adding referenced objects under derived names
        unless an equal object is already present."""
        existing = self.name_of(obj)
        if existing is not None:
            return existing
        if name in self.objects:
            raise MalformedDocument(f"duplicate object name {name!r}")
        self.objects[name] = obj
        return name

    def name_of(self, obj):
        for k, v in self.objects.items():
            if v is obj:
                return k
        for k, v in self.objects.items():
            if type(v) is type(obj) and _same(v, obj):
                return k
        return None

    def to_data(self):
        out = {}
        refs = _Refs(self)
        for name in sorted(self.objects):
            out[name] = encode(self.field, self.objects[name], refs, name)
        for name, data in refs.extra.items():
            out.setdefault(name, data)
        return {"schema_version": SCHEMA_VERSION, "field": self.field.tag(), "objects": dict(sorted(out.items()))}

    def dumps(self):
        return dumps_data(self.to_data())


def dumps_data(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _same(a, b):
    if isinstance(a, Extension):
        return (a.kernel, a.total, a.quotient, a.i, a.p, a.section) == (b.kernel, b.total, b.quotient, b.i, b.p, b.section)
    try:
        return a == b
    except Exception:
        return a is b


def kind_of(obj):
    if isinstance(obj, LieAlgebra):
        return "lie_algebra"
    if isinstance(obj, NijenhuisLieAlgebra):
        return "nijenhuis"
    if isinstance(obj, Representation):
        return "representation"
    if isinstance(obj, NijenhuisRepresentation):
        return "nij_representation"
    if isinstance(obj, NonAbelianCocycle):
        return "cocycle_nab"
    if isinstance(obj, AbelianCocycle):
        return "cocycle_ab"
    if isinstance(obj, Extension):
        return "extension"
    if isinstance(obj, Matrix):
        return "linear_map"
    if isinstance(obj, (AutPair, DerPair)):
        return "pair"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


class _Refs:
    """Names for referenced sub-objects, created on demand."""

    def __init__(self, doc):
        self.doc = doc
        self.extra = {}
        self.named = []

    def ref(self, obj, hint):
        name = self.doc.name_of(obj)
        if name is not None:
            return name
        for n, o in self.named:
            if type(o) is type(obj) and _same(o, obj):
                return n
        name = hint
        k = 1
        while name in self.doc.objects or name in self.extra:
            k += 1
            name = f"{hint}{k}"
        self.named.append((name, obj))
        self.extra[name] = None
        self.extra[name] = encode(self.doc.field, obj, self, name)
        return name


def encode(F, obj, refs, name):
    kind = kind_of(obj)
    if kind == "lie_algebra":
        return {"kind": kind, "dim": obj.dim, "brackets": triples_to_data(F, obj.table, obj.dim)}
    if kind == "nijenhuis":
        return {"kind": kind, "algebra": refs.ref(obj.algebra, name + ".algebra"), "N": matrix_to_data(F, obj.N)}
    if kind == "representation":
        return {"kind": kind, "algebra": refs.ref(obj.algebra, name + ".algebra"), "dim": obj.dim,
                "rho": [matrix_to_data(F, r) for r in obj.rho]}
    if kind == "nij_representation":
        return {"kind": kind, "base": refs.ref(obj.base, name + ".base"),
                "representation": refs.ref(obj.rep, name + ".rep"), "S": matrix_to_data(F, obj.S)}
    if kind == "cocycle_nab":
        return {"kind": kind, "source": refs.ref(obj.source, name + ".source"),
                "target": refs.ref(obj.target, name + ".target"),
                "chi": triples_to_data(F, obj.chi.table, obj.source.dim),
                "psi": [matrix_to_data(F, P) for P in obj.psi], "F": matrix_to_data(F, obj.F)}
    if kind == "cocycle_ab":
        return {"kind": kind, "context": refs.ref(obj.context, name + ".context"),
                "chi": triples_to_data(F, obj.chi.table, obj.context.base.dim), "F": matrix_to_data(F, obj.F)}
    if kind == "extension":
        return {"kind": kind, "kernel": refs.ref(obj.kernel, name + ".kernel"),
                "total": refs.ref(obj.total, name + ".total"), "quotient": refs.ref(obj.quotient, name + ".quotient"),
                "i": matrix_to_data(F, obj.i), "p": matrix_to_data(F, obj.p),
                "section": None if obj.section is None else matrix_to_data(F, obj.section)}
    if kind == "linear_map":
        return {"kind": kind, "rows": obj.rows, "cols": obj.cols, "matrix": matrix_to_data(F, obj)}
    if isinstance(obj, AutPair):
        return {"kind": "pair", "type": "aut", "kernel_map": matrix_to_data(F, obj.beta),
                "quotient_map": matrix_to_data(F, obj.alpha)}
    return {"kind": "pair", "type": "der", "kernel_map": matrix_to_data(F, obj.d_V),
            "quotient_map": matrix_to_data(F, obj.d_g)}


# ---------------------------------------------------------------- reading

def loads(text, validate=True):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"not valid JSON: {e}")
    return from_data(data, validate)


def load(path, validate=True):
    try:
        with open(path) as fh:
            return loads(fh.read(), validate)
    except OSError as e:
        raise MalformedDocument(str(e))


def from_data(data, validate=True):
    if not isinstance(data, dict):
        raise MalformedDocument("document must be an object")
    if str(data.get("schema_version")) != SCHEMA_VERSION:
        raise MalformedDocument(f"unsupported schema_version {data.get('schema_version')!r}")
    try:
        F = field_from_tag(data.get("field"))
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedDocument(f"bad field tag: {e}")
    raw = data.get("objects", {})
    if not isinstance(raw, dict):
        raise MalformedDocument("objects must be a mapping")
    doc = Document(F)
    loader = _Loader(F, raw, validate)
    for name in sorted(raw):
        doc.objects[name] = loader.get(name)
    return doc


class _Loader:
    def __init__(self, F, raw, validate):
        self.F = F
        self.raw = raw
        self.validate = validate
        self.done = {}
        self.active = set()

    def get(self, name, kind=None):
        if not isinstance(name, str) or name not in self.raw:
            raise MalformedDocument(f"unresolved reference {name!r}")
        if name in self.active:
            raise MalformedDocument(f"cyclic reference at {name!r}")
        if name not in self.done:
            self.active.add(name)
            try:
                self.done[name] = self._build(name, self.raw[name])
            except KeyError as e:
                raise MalformedDocument(f"{name}: missing field {e}")
            finally:
                self.active.discard(name)
        obj = self.done[name]
        if kind is not None and kind_of(obj) != kind and not (kind == "pair" and isinstance(obj, (AutPair, DerPair))):
            raise MalformedDocument(f"{name!r} is a {kind_of(obj)}, expected {kind}")
        return obj

    def _build(self, name, d):
        F = self.F
        if not isinstance(d, dict) or d.get("kind") not in KINDS:
            raise MalformedDocument(f"{name}: unknown kind {d.get('kind') if isinstance(d, dict) else d!r}")
        kind = d["kind"]
        if kind == "lie_algebra":
            n = d["dim"]
            if not isinstance(n, int) or n < 0:
                raise MalformedDocument(f"{name}: bad dim")
            L = LieAlgebra(F, n, triples_from_data(F, n, n, d["brackets"]), name)
            return self._valid(L, check_lie, name)
        if kind == "nijenhuis":
            L = self.get(d["algebra"], "lie_algebra")
            G = NijenhuisLieAlgebra(L, matrix_from_data(F, d["N"], L.dim, L.dim))
            return self._valid(G, lambda g: check_nijenhuis(g.algebra, g.N), name)
        if kind == "representation":
            L = self.get(d["algebra"], "lie_algebra")
            m = d["dim"]
            rho = tuple(matrix_from_data(F, r, m, m) for r in d["rho"])
            if len(rho) != L.dim:
                raise DimensionMismatch(f"{name}: {len(rho)} action matrices for dim {L.dim}")
            return self._valid(Representation(L, m, rho), check_representation, name)
        if kind == "nij_representation":
            G = self.get(d["base"], "nijenhuis")
            rep = self.get(d["representation"], "representation")
            R = NijenhuisRepresentation(G, rep, matrix_from_data(F, d["S"], rep.dim, rep.dim))
            return self._valid(R, check_nij_representation, name)
        if kind == "cocycle_nab":
            G = self.get(d["source"], "nijenhuis")
            H = self.get(d["target"], "nijenhuis")
            n, m = G.dim, H.dim
            chi = Bilinear(F, n, m, triples_from_data(F, n, m, d["chi"]))
            psi = tuple(matrix_from_data(F, P, m, m) for P in d["psi"])
            if len(psi) != n:
                raise DimensionMismatch(f"{name}: psi needs {n} matrices")
            c = NonAbelianCocycle(G, H, chi, psi, matrix_from_data(F, d["F"], m, n))
            return self._valid(c, check_nonabelian_cocycle, name)
        if kind == "cocycle_ab":
            R = self.get(d["context"], "nij_representation")
            n, m = R.base.dim, R.dim
            c = AbelianCocycle(R, Bilinear(F, n, m, triples_from_data(F, n, m, d["chi"])),
                               matrix_from_data(F, d["F"], m, n))
            return self._valid(c, check_abelian_cocycle, name)
        if kind == "extension":
            H = self.get(d["kernel"], "nijenhuis")
            T = self.get(d["total"], "nijenhuis")
            G = self.get(d["quotient"], "nijenhuis")
            s = d.get("section")
            E = Extension(H, T, G, matrix_from_data(F, d["i"], T.dim, H.dim), matrix_from_data(F, d["p"], G.dim, T.dim),
                          None if s is None else matrix_from_data(F, s, T.dim, G.dim))
            return self._valid(E, check_extension, name)
        if kind == "linear_map":
            return matrix_from_data(F, d["matrix"], d.get("rows"), d.get("cols"))
        if kind == "pair":
            a = matrix_from_data(F, d["kernel_map"])
            b = matrix_from_data(F, d["quotient_map"])
            if d.get("type") == "aut":
                return AutPair(a, b)
            if d.get("type") == "der":
                return DerPair(a, b)
            raise MalformedDocument(f"{name}: pair type must be aut or der")

    def _valid(self, obj, check, name):
        if self.validate:
            r = check(obj)
            if not r.ok:
                e = _validation_error(name, r)
                raise e
        return obj


class DocumentInvalid(NijlieError):
    """An object failed its module check on load."""

    def __init__(self, name, report):
        self.report = report
        super().__init__(f"{name}: {report.first().describe()}")


def _validation_error(name, report):
    return DocumentInvalid(name, report)


def validate_object(obj):
    """The module check appropriate for obj."""
    kind = kind_of(obj)
    if kind == "lie_algebra":
        return check_lie(obj)
    if kind == "nijenhuis":
        return check_nijenhuis(obj.algebra, obj.N)
    if kind == "representation":
        return check_representation(obj)
    if kind == "nij_representation":
        r = check_representation(obj.rep)
        return r.extend(check_nij_representation(obj)) if r.ok else r
    if kind == "cocycle_nab":
        return check_nonabelian_cocycle(obj)
    if kind == "cocycle_ab":
        return check_abelian_cocycle(obj)
    if kind == "extension":
        return check_extension(obj)
    from .report import Report
    return Report(kind)
