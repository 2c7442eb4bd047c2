"""Extensions 0 -> (h,S) -i-> (e,U) -p-> (g,N) -> 0 and the passage between
extensions and non-abelian 2-cocycles.

Extensions built here live on g + h with the basis of g first, so that
i = [0; I], p = [I 0] and the canonical section is s(x) = (x, 0)."""
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    InternalInvariantError, InvalidExtension, KernelNotAbelian, NotASection,
    NotACocycle, ValueOutsideKernel, WitnessInvalid,
)
from .exactmath import Matrix, image, kernel, lincomb, rref, unit, vsub, zero_vec
from .liecore import LieAlgebra, Representation, check_lie, is_bracket_morphism
from .nijenhuis import (
    NijenhuisLieAlgebra, NijenhuisRepresentation, check_nij_representation, check_nijenhuis,
    is_nij_morphism, semidirect,
)
from .cohomology import (
    AbelianCocycle, Bilinear, NonAbelianCocycle, as_abelian, check_equivalence_witness,
    check_nonabelian_cocycle, compute_H2, search_equivalence,
)
from .report import Report


class Extension:
    def __init__(self, kernel_alg, total, quotient_alg, i, p, section=None):
        self.kernel = kernel_alg
        self.total = total
        self.quotient = quotient_alg
        self.i = i
        self.p = p
        self.section = section
        self._left = None

    @property
    def field(self):
        return self.total.field

    def left_inverse(self):
        """Matrix L with L i = Id (rows of i at pivot positions, inverted)."""
        if self._left is None:
            F = self.field
            m = self.i.cols
            _, piv = rref(self.i.T)
            if len(piv) != m:
                raise InvalidExtension("i is not injective")
            A = Matrix(F, [self.i.row(r) for r in piv], m, m)
            sel = Matrix(F, [unit(F, self.i.rows, r) for r in piv], m, self.i.rows)
            self._left = A.inverse() @ sel
        return self._left

    def i_inv(self, v):
        h = self.left_inverse() @ v
        if self.i @ h != tuple(v):
            raise ValueOutsideKernel(f"{v} is not in the image of i")
        return h

    def i_inv_map(self, M):
        """i^{-1} o M for a matrix M with values in image(i)."""
        cols = [self.i_inv(c) for c in M.columns()]
        return Matrix.from_columns(self.field, self.kernel.dim, cols)

    def ebracket(self, a, b):
        return self.total.algebra.bracket(a, b)

    def __repr__(self):
        return f"Extension(h={self.kernel.dim}, e={self.total.dim}, g={self.quotient.dim})"


def check_extension(E):
    rep = Report("extension")
    F = E.field
    m, d, n = E.kernel.dim, E.total.dim, E.quotient.dim
    for name, G in (("kernel", E.kernel), ("total", E.total), ("quotient", E.quotient)):
        r = check_lie(G.algebra)
        if not r.ok:
            rep.add(f"{name}-lie", r.first().indices)
        r = check_nijenhuis(G.algebra, G.N)
        if not r.ok:
            rep.add(f"{name}-nijenhuis", r.first().indices)
    if E.i.shape != (d, m) or E.p.shape != (n, d):
        rep.add("shapes", (), E.i.shape, E.p.shape)
        return rep
    if E.i.rank() != m:
        rep.add("injectivity", (), E.i.rank(), m)
    if E.p.rank() != n:
        rep.add("surjectivity", (), E.p.rank(), n)
    if image(E.i) != kernel(E.p):
        rep.add("exactness")
    if not is_bracket_morphism(E.kernel.algebra, E.total.algebra, E.i):
        rep.add("i-morphism")
    if not is_bracket_morphism(E.total.algebra, E.quotient.algebra, E.p):
        rep.add("p-morphism")
    if E.i @ E.kernel.N != E.total.N @ E.i:
        rep.add("i-operator")
    if E.p @ E.total.N != E.quotient.N @ E.p:
        rep.add("p-operator")
    if E.section is not None and E.p @ E.section != Matrix.identity(F, n):
        rep.add("section")
    return rep


def require_extension(E):
    r = check_extension(E)
    if not r.ok:
        raise InvalidExtension(r.first().describe())
    return E


def _section(E, s):
    s = E.section if s is None else s
    if s is None:
        raise NotASection("no section given and none stored")
    if s.shape != (E.total.dim, E.quotient.dim) or E.p @ s != Matrix.identity(E.field, E.quotient.dim):
        raise NotASection("p s != Id")
    return s


def extract_cocycle(E, s=None, check=True):
    """(chi, psi, F) of E at the section s."""
    if check:
        require_extension(E)
    s = _section(E, s)
    F = E.field
    n, m = E.quotient.dim, E.kernel.dim
    L = E.quotient.algebra
    Le = E.total.algebra
    scols = s.columns()
    pairs = {}
    for i, j in combinations(range(n), 2):
        pairs[(i, j)] = E.i_inv(vsub(F, Le.bracket(scols[i], scols[j]), s @ L.table[i][j]))
    chi = Bilinear.from_pairs(F, n, m, pairs)
    psi = tuple(E.i_inv_map(Le.ad(scols[k]) @ E.i) for k in range(n))
    Fm = E.i_inv_map(E.total.N @ s - s @ E.quotient.N)
    c = NonAbelianCocycle(E.quotient, E.kernel, chi, psi, Fm)
    if check:
        r = check_nonabelian_cocycle(c)
        if not r.ok:
            raise InternalInvariantError("extracted triple is not a cocycle: " + r.first().describe())
    return c


def build_extension(c, check=True):
    """(g + h, [,]_{chi,psi}, U_F) with canonical i, p and section."""
    if check:
        r = check_nonabelian_cocycle(c)
        if not r.ok:
            raise NotACocycle(r.first().describe())
    F = c.field
    G, Hn = c.source, c.target
    n, m = G.dim, Hn.dim
    d = n + m
    L, H = G.algebra, Hn.algebra
    zg, zh = zero_vec(F, n), zero_vec(F, m)
    table = [[zero_vec(F, d) for _ in range(d)] for _ in range(d)]
    for a in range(n):
        for b in range(n):
            table[a][b] = L.table[a][b] + c.chi.table[a][b]
        for k in range(m):
            v = c.psi[a].col(k)
            table[a][n + k] = zg + v
            table[n + k][a] = zg + tuple(F.reduce(-x) for x in v)
    for k in range(m):
        for l in range(m):
            table[n + k][n + l] = zg + H.table[k][l]
    name = f"ext({L.name},{H.name})" if L.name or H.name else ""
    Le = LieAlgebra(F, d, table, name)
    U = Matrix.block(F, [[G.N, Matrix.zeros(F, n, m)], [c.F, Hn.N]])
    i = Matrix.block(F, [[Matrix.zeros(F, n, m)], [Matrix.identity(F, m)]])
    p = Matrix.block(F, [[Matrix.identity(F, n), Matrix.zeros(F, n, m)]])
    s = Matrix.block(F, [[Matrix.identity(F, n)], [Matrix.zeros(F, m, n)]])
    E = Extension(Hn, NijenhuisLieAlgebra(Le, U), G, i, p, s)
    if check:
        r = check_extension(E)
        if not r.ok:
            raise InternalInvariantError("built extension invalid: " + r.first().describe())
    return E


def check_extension_iso(E, E2, Phi):
    rep = Report("extension_iso")
    if Phi.shape != (E2.total.dim, E.total.dim):
        rep.add("shape", (), Phi.shape, (E2.total.dim, E.total.dim))
        return rep
    if not Phi.is_invertible():
        rep.add("bijectivity")
    Le, Le2 = E.total.algebra, E2.total.algebra
    cols = Phi.columns()
    for a, b in combinations(range(E.total.dim), 2):
        lhs = Phi @ Le.table[a][b]
        rhs = Le2.bracket(cols[a], cols[b])
        if lhs != rhs:
            rep.add("bracket-morphism", (a, b), lhs, rhs)
    if E2.total.N @ Phi != Phi @ E.total.N:
        rep.add("operator")
    if Phi @ E.i != E2.i:
        rep.add("kernel")
    if E2.p @ Phi != E.p:
        rep.add("quotient")
    return rep


def isomorphism_from_witness(E, phi):
    """Phi(x, h) = (x, phi x + h) on g + h."""
    F = E.field
    n, m = E.quotient.dim, E.kernel.dim
    return Matrix.block(F, [[Matrix.identity(F, n), Matrix.zeros(F, n, m)], [phi, Matrix.identity(F, m)]])


def build_isomorphism(E, E2, phi):
    """Isomorphism of built extensions from a witness relating their cocycles."""
    c = extract_cocycle(E, check=False)
    c2 = extract_cocycle(E2, check=False)
    r = check_equivalence_witness(c, c2, phi)
    if not r.ok:
        raise WitnessInvalid(r.first().describe())
    Phi = isomorphism_from_witness(E, phi)
    r = check_extension_iso(E, E2, Phi)
    if not r.ok:
        raise InternalInvariantError("witness did not give an isomorphism: " + r.first().describe())
    return Phi


def roundtrip_isomorphism(E, s=None):
    """Phi(x, h) = s x + i h from build_extension(extract_cocycle(E, s)) to E."""
    s = _section(E, s)
    c = extract_cocycle(E, s)
    Eb = build_extension(c)
    F = E.field
    Phi = Matrix.block(F, [[s, E.i]])
    return Eb, Phi


def transported_section(Phi, s):
    return Phi @ s


def _other_section(E, s):
    """A second section s + i J with J the all-ones map g -> h."""
    F = E.field
    n, m = E.quotient.dim, E.kernel.dim
    J = Matrix(F, [[1] * n for _ in range(m)], m, n)
    return s + E.i @ J


def induced_representation(E, s=None):
    """rho_x v = i^{-1}[s x, i v]; independence of s is re-verified."""
    if not E.kernel.algebra.is_abelian():
        raise KernelNotAbelian("kernel bracket is nonzero")
    s = _section(E, s)
    Le = E.total.algebra

    def rho_at(sec):
        return tuple(E.i_inv_map(Le.ad(sec.col(k)) @ E.i) for k in range(E.quotient.dim))

    rho = rho_at(s)
    if rho_at(_other_section(E, s)) != rho:
        raise InternalInvariantError("induced action depends on the section")
    R = NijenhuisRepresentation(E.quotient, Representation(E.quotient.algebra, E.kernel.dim, rho), E.kernel.N)
    r = check_nij_representation(R)
    if not r.ok:
        raise InternalInvariantError("induced triple is not a Nijenhuis representation")
    return R


def abelian_cocycle(E, s=None):
    """(chi, F) of an abelian extension over its induced representation."""
    R = induced_representation(E, s)
    c = extract_cocycle(E, s)
    return AbelianCocycle(R, c.chi, c.F)


def section_is_morphism(E, s):
    return is_nij_morphism(E.quotient, E.total, s)


def is_split(E, s=None):
    """A section that is a Nijenhuis morphism, or None.

    Decided by the H^2 class of the extracted pair; when it vanishes the
    section s - i phi with (chi, F) = coboundary(phi) splits E."""
    if not E.kernel.algebra.is_abelian():
        raise KernelNotAbelian("split extensions are only considered for abelian kernels")
    s = _section(E, s)
    c = abelian_cocycle(E, s)
    H2 = compute_H2(c.context)
    if any(H2.coordinates(c)):
        return None
    zero = AbelianCocycle.zero(c.context)
    res = search_equivalence(c.as_nonabelian(), zero.as_nonabelian())
    if not res.found:
        raise InternalInvariantError("zero class without a trivializing map")
    s2 = s - E.i @ res.phi
    if not section_is_morphism(E, s2):
        raise InternalInvariantError("corrected section is not a morphism")
    return s2


def split_extension(R):
    """Semidirect product g + V as an extension with the canonical section."""
    F = R.field
    n, m = R.base.dim, R.dim
    T = semidirect(R) if m else NijenhuisLieAlgebra(R.base.algebra, R.base.N)
    V = NijenhuisLieAlgebra(LieAlgebra.abelian(F, m), R.S)
    i = Matrix.block(F, [[Matrix.zeros(F, n, m)], [Matrix.identity(F, m)]])
    p = Matrix.block(F, [[Matrix.identity(F, n), Matrix.zeros(F, n, m)]])
    s = Matrix.block(F, [[Matrix.identity(F, n)], [Matrix.zeros(F, m, n)]])
    return Extension(V, T, R.base, i, p, s)


def extension_from_abelian(c):
    """build_extension for an abelian pair (chi, F)."""
    return build_extension(c.as_nonabelian())
