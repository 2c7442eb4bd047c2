"""Nijenhuis operators, Nijenhuis representations, deformed bracket,
semidirect products and Nijenhuis derivations."""
from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionMismatch, InternalInvariantError, InvalidRepresentation, NotNijenhuis
from .exactmath import Matrix, Subspace, kernel, lincomb, linear_map_matrix, unit, vsub, zero_vec
from .liecore import (
    LieAlgebra, Representation, check_lie, check_representation, end_from_flat,
    is_bracket_morphism, leibniz_residual,
)
from .report import Report


@dataclass(frozen=True, eq=True)
class NijenhuisLieAlgebra:
    algebra: LieAlgebra
    N: Matrix

    def __post_init__(self):
        if self.N.shape != (self.algebra.dim, self.algebra.dim):
            raise DimensionMismatch(f"operator shape {self.N.shape} on dim {self.algebra.dim}")

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def field(self):
        return self.algebra.field

    def bracket(self, x, y):
        return self.algebra.bracket(x, y)


@dataclass(frozen=True, eq=True)
class NijenhuisRepresentation:
    base: NijenhuisLieAlgebra
    rep: Representation
    S: Matrix

    def __post_init__(self):
        if self.S.shape != (self.rep.dim, self.rep.dim):
            raise DimensionMismatch(f"S shape {self.S.shape} on V of dim {self.rep.dim}")
        if self.rep.algebra != self.base.algebra:
            raise DimensionMismatch("representation of a different algebra")

    @property
    def field(self):
        return self.base.field

    @property
    def dim(self):
        return self.rep.dim

    @property
    def N(self):
        return self.base.N

    @property
    def algebra(self):
        return self.base.algebra

    def rho(self, i):
        return self.rep.rho[i]

    def act(self, x, v):
        return self.rep.act(x, v)


def torsion(L, N, x, y):
    """[Nx,Ny] - N([Nx,y] + [x,Ny] - N[x,y])."""
    F = L.field
    Nx, Ny = N @ x, N @ y
    inner = lincomb(F, L.dim, [(1, L.bracket(Nx, y)), (1, L.bracket(x, Ny)), (-1, N @ L.bracket(x, y))])
    return vsub(F, L.bracket(Nx, Ny), N @ inner)


def check_nijenhuis(L, N):
    if N.shape != (L.dim, L.dim):
        raise DimensionMismatch(f"operator shape {N.shape} on dim {L.dim}")
    rep = Report("nijenhuis")
    F = L.field
    n = L.dim
    cols = N.columns()
    for i, j in combinations(range(n), 2):
        lhs = L.bracket(cols[i], cols[j])
        inner = lincomb(F, n, [(1, L.bracket(cols[i], unit(F, n, j))), (1, L.bracket(unit(F, n, i), cols[j])),
                               (-1, N @ L.table[i][j])])
        rhs = N @ inner
        if lhs != rhs:
            rep.add("nijenhuis", (i, j), lhs, rhs)
    return rep


def is_nijenhuis(L, N):
    return check_nijenhuis(L, N).ok


def deformed_bracket_table(L, N):
    F = L.field
    n = L.dim
    cols = N.columns()
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            ei, ej = unit(F, n, i), unit(F, n, j)
            row.append(lincomb(F, n, [(1, L.bracket(cols[i], ej)), (1, L.bracket(ei, cols[j])), (-1, N @ L.table[i][j])]))
        table.append(row)
    return table


def deformed_algebra(G):
    """(g, [x,y]_N).  N is then a morphism g_N -> g; both facts are verified."""
    L, N = G.algebra, G.N
    r = check_nijenhuis(L, N)
    if not r.ok:
        raise NotNijenhuis(r.first().describe())
    LN = LieAlgebra(L.field, L.dim, deformed_bracket_table(L, N), (L.name + "_N") if L.name else "")
    if not check_lie(LN).ok:
        raise InternalInvariantError("deformed bracket is not a Lie bracket")
    if not is_bracket_morphism(LN, L, N):
        raise InternalInvariantError("N is not a morphism from the deformed algebra")
    return LN


def check_nij_representation(R):
    """rho(Nx) S v = S(rho(Nx) v + rho(x) S v - S rho(x) v) on basis x, v."""
    rep = Report("nij_representation")
    G = R.base
    F = G.field
    S = R.S
    n = G.dim
    for i in range(n):
        rx = R.rep.rho[i]
        rNx = R.rep.rho_of(G.N.col(i))
        lhs_m = rNx @ S
        rhs_m = S @ (rNx + rx @ S - S @ rx)
        if lhs_m != rhs_m:
            for a in range(R.dim):
                l, r = lhs_m.col(a), rhs_m.col(a)
                if l != r:
                    rep.add("nij_rep", (i, a), l, r)
    return rep


def semidirect_algebra(R):
    """g + V with [(x,u),(y,v)] = ([x,y], rho_x v - rho_y u); basis: g first."""
    L = R.rep.algebra
    F = L.field
    n, m = L.dim, R.rep.dim
    d = n + m
    table = [[zero_vec(F, d) for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            table[i][j] = L.table[i][j] + zero_vec(F, m)
        for a in range(m):
            v = R.rep.rho[i].col(a)
            table[i][n + a] = zero_vec(F, n) + v
            table[n + a][i] = zero_vec(F, n) + tuple(F.reduce(-x) for x in v)
    return LieAlgebra(F, d, table, f"{L.name}x{m}" if L.name else "")


def semidirect(R):
    if R.rep.dim == 0:
        return R.base
    r = check_representation(R.rep)
    if r.ok:
        r = check_nij_representation(R)
    if not r.ok:
        raise InvalidRepresentation(r.first().describe())
    F = R.field
    E = semidirect_algebra(R)
    U = Matrix.block(F, [[R.base.N, None], [None, R.S]])
    if not check_nijenhuis(E, U).ok:
        raise InternalInvariantError("N + S is not Nijenhuis on the semidirect product")
    return NijenhuisLieAlgebra(E, U)


def is_nij_morphism(G1, G2, f):
    return is_bracket_morphism(G1.algebra, G2.algebra, f) and G2.N @ f == f @ G1.N


def commutator_closed(F, n, space):
    """Check [D, D'] lies in the space for all pairs of basis elements."""
    mats = [end_from_flat(F, n, b) for b in space.basis]
    for a, b in combinations(mats, 2):
        if not space.contains(a.commutator(b).flat()):
            return False
    return True


def nij_derivation_space(G):
    """Der(g, N): derivations commuting with N, as flattened n x n matrices."""
    L, N = G.algebra, G.N
    F = L.field
    n = L.dim

    def residual(v):
        D = end_from_flat(F, n, v)
        return leibniz_residual(L, D) + (N @ D - D @ N).flat()

    A = linear_map_matrix(F, n * n, residual, n_out=n * n * (n - 1) // 2 + n * n)
    K = kernel(A)
    if not commutator_closed(F, n, K):
        raise InternalInvariantError("Der(g,N) not closed under commutator")
    return K


def valued_derivation_residual(R, d):
    """(S d - d N, d[x,y] - rho_x d y + rho_y d x) for d: g -> V."""
    G = R.base
    L = G.algebra
    F = L.field
    n = L.dim
    out = list((R.S @ d - d @ G.N).flat())
    cols = d.columns()
    for i, j in combinations(range(n), 2):
        r = lincomb(F, R.dim, [(1, d @ L.table[i][j]), (-1, R.rep.rho[i] @ cols[j]), (1, R.rep.rho[j] @ cols[i])])
        out.extend(r)
    return tuple(out)


def nij_derivation_space_valued(G, R):
    """Der((g,N);(V,S)) as flattened m x n matrices (row-major)."""
    if R.base != G:
        raise DimensionMismatch("representation over a different Nijenhuis algebra")
    F = G.field
    n, m = G.dim, R.dim
    A = linear_map_matrix(F, m * n, lambda v: valued_derivation_residual(R, Matrix.from_flat(F, m, n, v)),
                          n_out=m * n + m * n * (n - 1) // 2)
    return kernel(A)
