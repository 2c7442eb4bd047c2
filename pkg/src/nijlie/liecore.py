"""Lie algebras by structure constants, representations, morphisms, derivations.

Basis indices in reports are 0-based.
"""
from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionMismatch, FieldMismatch, NotALieAlgebra
from .exactmath import (
    Matrix, Subspace, kernel, lincomb, linear_map_matrix, unit, vadd, vsub, zero_vec,
)
from .report import Report


class LieAlgebra:
    """Bracket given by table[i][j] = [e_i, e_j] as a coordinate tuple.

    The constructor does not validate; run ``check_lie`` (or use
    ``from_brackets`` which applies the alternating closure)."""

    def __init__(self, field, dim, table, name=""):
        self.field = field
        self.dim = dim
        F = field
        self.table = tuple(tuple(tuple(F.reduce(x) for x in table[i][j]) for j in range(dim)) for i in range(dim))
        for i in range(dim):
            for j in range(dim):
                if len(self.table[i][j]) != dim:
                    raise DimensionMismatch("structure constant vector length")
        self.name = name
        self._terms = [
            (i, j, self.table[i][j]) for i in range(dim) for j in range(dim) if any(self.table[i][j])
        ]

    @classmethod
    def from_brackets(cls, field, dim, brackets, name=""):
        """brackets: {(i, j): vector} or iterable of (i, j, k, value) with i < j.

        The alternating closure [e_j, e_i] = -[e_i, e_j], [e_i, e_i] = 0 is applied."""
        F = field
        table = [[list(zero_vec(F, dim)) for _ in range(dim)] for _ in range(dim)]
        if isinstance(brackets, dict):
            items = []
            for (i, j), v in brackets.items():
                for k, c in enumerate(v):
                    if c != 0:
                        items.append((i, j, k, c))
        else:
            items = list(brackets)
        for i, j, k, c in items:
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise DimensionMismatch(f"bracket entry ({i},{j},{k}) must have i<j<dim")
            table[i][j][k] = F.reduce(table[i][j][k] + c)
            table[j][i][k] = F.reduce(-table[i][j][k])
        return cls(F, dim, table, name)

    @classmethod
    def abelian(cls, field, dim, name=""):
        return cls(field, dim, [[zero_vec(field, dim)] * dim for _ in range(dim)], name or f"abelian{dim}")

    def bracket(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"bracket of vectors in dimension {self.dim}")
        F = self.field
        acc = [0] * self.dim
        for i, j, v in self._terms:
            c = x[i] * y[j]
            if c:
                for k, a in enumerate(v):
                    if a:
                        acc[k] += c * a
        return tuple(F.reduce(a) for a in acc)

    def basis_bracket(self, i, j):
        return self.table[i][j]

    def ad(self, x):
        """Matrix of [x, -]."""
        F = self.field
        cols = [self.bracket(x, unit(F, self.dim, j)) for j in range(self.dim)]
        return Matrix.from_columns(F, self.dim, cols)

    def ad_basis(self, i):
        return Matrix.from_columns(self.field, self.dim, [self.table[i][j] for j in range(self.dim)])

    def is_abelian(self):
        return not self._terms

    def triples(self):
        """Sparse (i, j, k, c) entries with i < j."""
        return [(i, j, k, c) for i in range(self.dim) for j in range(i + 1, self.dim)
                for k, c in enumerate(self.table[i][j]) if c != 0]

    def transport(self, P):
        """Same algebra in the basis given by the columns of invertible P:
        [x, y]' = P^{-1} [P x, P y]."""
        Pinv = P.inverse()
        if Pinv is None:
            raise ValueError("basis change must be invertible")
        F = self.field
        n = self.dim
        table = [[Pinv @ self.bracket(P.col(i), P.col(j)) for j in range(n)] for i in range(n)]
        return LieAlgebra(F, n, table, self.name)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.field == other.field and self.table == other.table

    def __hash__(self):
        return hash((self.field, self.table))

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim}, {self.field!r})"


def bracket_eval(L, x, y):
    return L.bracket(x, y)


def check_lie(L):
    rep = Report(f"lie[{L.name}]")
    F = L.field
    n = L.dim
    for i in range(n):
        if any(L.table[i][i]):
            rep.add("alternating", (i, i), L.table[i][i], zero_vec(F, n))
    for i, j in combinations(range(n), 2):
        s = vadd(F, L.table[i][j], L.table[j][i])
        if any(s):
            rep.add("antisymmetry", (i, j), L.table[i][j], tuple(F.reduce(-a) for a in L.table[j][i]))
    for i, j, k in combinations(range(n), 3):
        e = [unit(F, n, t) for t in (i, j, k)]
        a = L.bracket(L.table[i][j], e[2])
        b = L.bracket(L.table[j][k], e[0])
        c = L.bracket(L.table[k][i], e[1])
        s = lincomb(F, n, [(1, a), (1, b), (1, c)])
        if any(s):
            rep.add("jacobi", (i, j, k), s, zero_vec(F, n))
    return rep


def require_lie(L):
    r = check_lie(L)
    if not r.ok:
        raise NotALieAlgebra(r.first().describe())
    return L


class Representation:
    """rho[i] is the matrix of rho(e_i) on V."""

    def __init__(self, algebra, dim, rho):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        rho = tuple(rho)
        if len(rho) != algebra.dim:
            raise DimensionMismatch("one matrix per basis element required")
        for m in rho:
            if m.shape != (dim, dim):
                raise DimensionMismatch(f"rho matrix shape {m.shape}, expected {(dim, dim)}")
            if m.field != self.field:
                raise FieldMismatch("rho field")
        self.rho = rho

    def rho_of(self, x):
        F = self.field
        out = Matrix.zeros(F, self.dim, self.dim)
        for c, m in zip(x, self.rho):
            if c != 0:
                out = out + m.scale(c)
        return out

    def act(self, x, v):
        F = self.field
        return lincomb(F, self.dim, [(c, m @ v) for c, m in zip(x, self.rho) if c != 0])

    @classmethod
    def trivial(cls, algebra, dim):
        return cls(algebra, dim, [Matrix.zeros(algebra.field, dim, dim)] * algebra.dim)

    def __eq__(self, other):
        return isinstance(other, Representation) and self.algebra == other.algebra and self.rho == other.rho

    def __hash__(self):
        return hash((self.algebra, self.rho))

    def __repr__(self):
        return f"Representation({self.algebra.name or '?'} on dim {self.dim})"


def check_representation(R):
    rep = Report("representation")
    L = R.algebra
    n = L.dim
    for i, j in combinations(range(n), 2):
        lhs = R.rho_of(L.table[i][j])
        rhs = R.rho[i].commutator(R.rho[j])
        if lhs != rhs:
            rep.add("homomorphism", (i, j), lhs.flat(), rhs.flat())
    return rep


def adjoint_rep(L):
    require_lie(L)
    return Representation(L, L.dim, [L.ad_basis(i) for i in range(L.dim)])


def leibniz_residual(L, D):
    """D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] for i < j, concatenated."""
    F = L.field
    n = L.dim
    out = []
    cols = D.columns()
    for i, j in combinations(range(n), 2):
        r = vsub(F, D @ L.table[i][j], vadd(F, L.bracket(cols[i], unit(F, n, j)), L.bracket(unit(F, n, i), cols[j])))
        out.extend(r)
    return tuple(out)


def end_from_flat(F, n, v):
    return Matrix.from_flat(F, n, n, v)


def derivation_space(L):
    """Derivations of L as a subspace of row-major flattened n x n matrices."""
    F = L.field
    n = L.dim
    A = linear_map_matrix(F, n * n, lambda v: leibniz_residual(L, end_from_flat(F, n, v)),
                          n_out=n * n * (n - 1) // 2)
    return kernel(A)


def is_derivation(L, D):
    return not any(leibniz_residual(L, D))


@dataclass(frozen=True)
class AlgebraMorphism:
    source: LieAlgebra
    target: LieAlgebra
    map: Matrix


def check_morphism(M):
    S, T, f = M.source, M.target, M.map
    rep = Report("morphism")
    if f.shape != (T.dim, S.dim):
        raise DimensionMismatch(f"map shape {f.shape}, expected {(T.dim, S.dim)}")
    F = S.field
    cols = f.columns()
    for i, j in combinations(range(S.dim), 2):
        lhs = f @ S.table[i][j]
        rhs = T.bracket(cols[i], cols[j])
        if lhs != rhs:
            rep.add("bracket", (i, j), lhs, rhs)
    rep.flags["bijective"] = f.is_invertible()
    return rep


def is_bracket_morphism(S, T, f):
    cols = f.columns()
    for i, j in combinations(range(S.dim), 2):
        if f @ S.table[i][j] != T.bracket(cols[i], cols[j]):
            return False
    return True


def is_automorphism(L, A):
    return A.is_invertible() and is_bracket_morphism(L, L, A)
