"""Non-abelian 2-cocycles (chi, psi, F), their equivalence, the abelian case
with its second cohomology, and the pushforward to deformed algebras.

Coordinates used for linear solves:
  * a map g -> h is flattened column by column (phi(e_0), phi(e_1), ...);
  * an abelian pair (chi, F) is flattened as chi(e_i, e_j) for i < j in
    lexicographic order followed by the columns F(e_j).
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .config import as_budget
from .errors import (
    BudgetExceeded, DimensionMismatch, InternalInvariantError, NotACocycle,
)
from .exactmath import (
    Matrix, PrimeField, Subspace, image, kernel, lincomb, linear_map_matrix, quotient,
    solve_affine, unit, vneg, vsub, zero_vec,
)
from .liecore import LieAlgebra, Representation, is_derivation
from .nijenhuis import NijenhuisLieAlgebra, NijenhuisRepresentation, deformed_algebra
from .report import Report


# ---------------------------------------------------------------- bilinear maps

class Bilinear:
    """Alternating bilinear map k^n x k^n -> k^m; table[i][j] = chi(e_i, e_j)."""

    __slots__ = ("field", "n", "m", "table", "_terms")

    def __init__(self, field, n, m, table):
        self.field = field
        self.n = n
        self.m = m
        self.table = tuple(tuple(tuple(field.reduce(x) for x in table[i][j]) for j in range(n)) for i in range(n))
        self._terms = [(i, j, self.table[i][j]) for i in range(n) for j in range(n) if any(self.table[i][j])]

    @classmethod
    def zero(cls, F, n, m):
        z = zero_vec(F, m)
        return cls(F, n, m, [[z] * n for _ in range(n)])

    @classmethod
    def from_pairs(cls, F, n, m, pairs):
        """pairs: {(i, j): vector} with i < j; alternating closure applied."""
        t = [[zero_vec(F, m) for _ in range(n)] for _ in range(n)]
        for (i, j), v in pairs.items():
            if not 0 <= i < j < n:
                raise DimensionMismatch(f"chi entry ({i},{j}) must have i<j")
            v = tuple(F.reduce(x) for x in v)
            t[i][j] = v
            t[j][i] = vneg(F, v)
        return cls(F, n, m, t)

    @classmethod
    def from_coords(cls, F, n, m, coords):
        pairs = {}
        k = 0
        for i, j in combinations(range(n), 2):
            pairs[(i, j)] = tuple(coords[k:k + m])
            k += m
        return cls.from_pairs(F, n, m, pairs)

    @classmethod
    def from_function(cls, F, n, m, fn):
        return cls.from_pairs(F, n, m, {(i, j): fn(unit(F, n, i), unit(F, n, j)) for i, j in combinations(range(n), 2)})

    def coords(self):
        out = []
        for i, j in combinations(range(self.n), 2):
            out.extend(self.table[i][j])
        return tuple(out)

    def __call__(self, x, y):
        F = self.field
        acc = [0] * self.m
        for i, j, v in self._terms:
            c = x[i] * y[j]
            if c:
                for k, a in enumerate(v):
                    if a:
                        acc[k] += c * a
        return tuple(F.reduce(a) for a in acc)

    def map_values(self, A):
        return Bilinear(self.field, self.n, A.rows, [[A @ self.table[i][j] for j in range(self.n)] for i in range(self.n)])

    def pullback(self, A):
        cols = A.columns()
        return Bilinear(self.field, self.n, self.m, [[self(cols[i], cols[j]) for j in range(self.n)] for i in range(self.n)])

    def __add__(self, o):
        F = self.field
        return Bilinear(F, self.n, self.m, [[lincomb(F, self.m, [(1, a), (1, b)]) for a, b in zip(r1, r2)] for r1, r2 in zip(self.table, o.table)])

    def __sub__(self, o):
        F = self.field
        return Bilinear(F, self.n, self.m, [[vsub(F, a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.table, o.table)])

    def scale(self, c):
        F = self.field
        return Bilinear(F, self.n, self.m, [[tuple(F.reduce(c * x) for x in a) for a in r] for r in self.table])

    def is_zero(self):
        return not self._terms

    def __eq__(self, o):
        return isinstance(o, Bilinear) and self.field == o.field and self.table == o.table

    def __hash__(self):
        return hash((self.field, self.table))

    def __repr__(self):
        nz = {(i, j): v for i, j, v in self._terms if i < j}
        return f"Bilinear({nz})"


def colvec(M):
    return tuple(x for c in M.columns() for x in c)


def map_from_colvec(F, m, n, v):
    return Matrix.from_columns(F, m, [tuple(v[j * m:(j + 1) * m]) for j in range(n)])


def psi_of(F, m, psi, x):
    out = Matrix.zeros(F, m, m)
    for c, P in zip(x, psi):
        if c:
            out = out + P.scale(c)
    return out


# ---------------------------------------------------------------- cocycle types

@dataclass(frozen=True)
class NonAbelianCocycle:
    source: NijenhuisLieAlgebra
    target: NijenhuisLieAlgebra
    chi: Bilinear
    psi: tuple
    F: Matrix

    def __post_init__(self):
        n, m = self.source.dim, self.target.dim
        object.__setattr__(self, "psi", tuple(self.psi))
        if (self.chi.n, self.chi.m) != (n, m):
            raise DimensionMismatch("chi shape")
        if len(self.psi) != n or any(P.shape != (m, m) for P in self.psi):
            raise DimensionMismatch("psi shape")
        if self.F.shape != (m, n):
            raise DimensionMismatch("F shape")

    @property
    def field(self):
        return self.source.field

    def psi_x(self, x):
        return psi_of(self.field, self.target.dim, self.psi, x)

    def act(self, x, h):
        F = self.field
        return lincomb(F, self.target.dim, [(c, P @ h) for c, P in zip(x, self.psi) if c])

    @classmethod
    def zero(cls, G, H):
        F = G.field
        n, m = G.dim, H.dim
        return cls(G, H, Bilinear.zero(F, n, m), (Matrix.zeros(F, m, m),) * n, Matrix.zeros(F, m, n))


@dataclass(frozen=True)
class AbelianCocycle:
    context: NijenhuisRepresentation
    chi: Bilinear
    F: Matrix

    def __post_init__(self):
        n, m = self.context.base.dim, self.context.dim
        if (self.chi.n, self.chi.m) != (n, m) or self.F.shape != (m, n):
            raise DimensionMismatch("abelian cocycle shapes")

    @property
    def field(self):
        return self.context.field

    def coords(self):
        return self.chi.coords() + colvec(self.F)

    @classmethod
    def from_coords(cls, R, v):
        F = R.field
        n, m = R.base.dim, R.dim
        k = m * n * (n - 1) // 2
        return cls(R, Bilinear.from_coords(F, n, m, v[:k]), map_from_colvec(F, m, n, v[k:]))

    @classmethod
    def zero(cls, R):
        F = R.field
        n, m = R.base.dim, R.dim
        return cls(R, Bilinear.zero(F, n, m), Matrix.zeros(F, m, n))

    def as_nonabelian(self):
        R = self.context
        H = NijenhuisLieAlgebra(LieAlgebra.abelian(R.field, R.dim), R.S)
        return NonAbelianCocycle(R.base, H, self.chi, R.rep.rho, self.F)


def abelian_target(R):
    return NijenhuisLieAlgebra(LieAlgebra.abelian(R.field, R.dim), R.S)


def as_abelian(c):
    """View a cocycle with abelian target as a pair (chi, F) over the
    representation x -> psi_x."""
    if not c.target.algebra.is_abelian():
        raise DimensionMismatch("target is not abelian")
    R = NijenhuisRepresentation(c.source, Representation(c.source.algebra, c.target.dim, c.psi), c.target.N)
    return AbelianCocycle(R, c.chi, c.F)


# ---------------------------------------------------------------- identities

def _lie_cocycle_checks(rep, L, H, chi, psi, prefix=""):
    """psi-derivation, action-curvature, chi-closed for Lie algebras L (source) and H (target)."""
    F = L.field
    n, m = L.dim, H.dim
    for i, P in enumerate(psi):
        if not is_derivation(H, P):
            rep.add(prefix + "psi-derivation", (i,))
    for i, j in combinations(range(n), 2):
        lhs = psi[i] @ psi[j] - psi[j] @ psi[i] - psi_of(F, m, psi, L.table[i][j])
        rhs = H.ad(chi.table[i][j])
        if lhs != rhs:
            for a in range(m):
                if lhs.col(a) != rhs.col(a):
                    rep.add(prefix + "action-curvature", (i, j, a), lhs.col(a), rhs.col(a))
    E = [unit(F, n, t) for t in range(n)]
    for i, j, k in combinations(range(n), 3):
        s = lincomb(F, m, [
            (1, psi[i] @ chi.table[j][k]), (1, psi[j] @ chi.table[k][i]), (1, psi[k] @ chi.table[i][j]),
            (-1, chi(L.table[i][j], E[k])), (-1, chi(L.table[j][k], E[i])), (-1, chi(L.table[k][i], E[j])),
        ])
        if any(s):
            rep.add(prefix + "chi-closed", (i, j, k), s, zero_vec(F, m))
    return rep


def operator_action_matrices(c, i):
    """(lhs, rhs) of operator-action at x = e_i as matrices acting on h."""
    F = c.field
    m = c.target.dim
    S = c.target.N
    H = c.target.algebra
    px = c.psi[i]
    pNx = c.psi_x(c.source.N.col(i))
    adF = H.ad(c.F.col(i))
    lhs = pNx @ S
    rhs = S @ (pNx + px @ S - S @ px) + S @ adF - adF @ S
    return lhs, rhs


def operator_chi_value(c, x, y):
    F = c.field
    G, Hn = c.source, c.target
    L, H = G.algebra, Hn.algebra
    N, S, Fm, chi = G.N, Hn.N, c.F, c.chi
    m = Hn.dim
    Nx, Ny = N @ x, N @ y
    Fx, Fy = Fm @ x, Fm @ y
    xy = L.bracket(x, y)
    dxy = lincomb(F, G.dim, [(1, L.bracket(Nx, y)), (1, L.bracket(x, Ny)), (-1, N @ xy)])
    inner1 = lincomb(F, m, [(1, chi(Nx, y)), (1, chi(x, Ny)), (-1, S @ chi(x, y))])
    inner2 = lincomb(F, m, [(1, c.act(x, Fy)), (-1, c.act(y, Fx)), (-1, Fm @ xy)])
    return lincomb(F, m, [
        (1, chi(Nx, Ny)), (-1, S @ inner1), (-1, Fm @ dxy),
        (1, c.act(Nx, Fy)), (-1, c.act(Ny, Fx)), (-1, S @ inner2), (1, H.bracket(Fx, Fy)),
    ])


def check_nonabelian_cocycle(c):
    rep = Report("nonabelian_cocycle")
    G, Hn = c.source, c.target
    F = c.field
    n, m = G.dim, Hn.dim
    _lie_cocycle_checks(rep, G.algebra, Hn.algebra, c.chi, c.psi)
    for i in range(n):
        lhs, rhs = operator_action_matrices(c, i)
        if lhs != rhs:
            for a in range(m):
                if lhs.col(a) != rhs.col(a):
                    rep.add("operator-action", (i, a), lhs.col(a), rhs.col(a))
    for i, j in combinations(range(n), 2):
        v = operator_chi_value(c, unit(F, n, i), unit(F, n, j))
        if any(v):
            rep.add("operator-chi", (i, j), v, zero_vec(F, m))
    return rep


def is_cocycle(c):
    return check_nonabelian_cocycle(c).ok


def require_cocycle(c):
    r = check_nonabelian_cocycle(c)
    if not r.ok:
        raise NotACocycle(r.first().describe())
    return c


# ---------------------------------------------------------------- equivalence

def _check_compatible(c, c2):
    if c.source != c2.source or c.target != c2.target:
        raise DimensionMismatch("cocycles over different algebras")


def equiv_action_residual(c, c2, phi):
    H = c.target.algebra
    out = []
    for i in range(c.source.dim):
        out.extend((c.psi[i] - c2.psi[i] - H.ad(phi.col(i))).flat())
    return tuple(out)


def equiv_chi_value(c, c2, phi, i, j):
    F = c.field
    L, H = c.source.algebra, c.target.algebra
    m = c.target.dim
    pi, pj = phi.col(i), phi.col(j)
    rhs = lincomb(F, m, [(1, c2.psi[i] @ pj), (-1, c2.psi[j] @ pi), (-1, phi @ L.table[i][j]), (1, H.bracket(pi, pj))])
    lhs = vsub(F, c.chi.table[i][j], c2.chi.table[i][j])
    return lhs, rhs


def equiv_chi_residual(c, c2, phi):
    F = c.field
    out = []
    for i, j in combinations(range(c.source.dim), 2):
        lhs, rhs = equiv_chi_value(c, c2, phi, i, j)
        out.extend(vsub(F, lhs, rhs))
    return tuple(out)


def equiv_operator_residual(c, c2, phi):
    S, N = c.target.N, c.source.N
    return colvec(c.F - c2.F - (S @ phi - phi @ N))


def check_equivalence_witness(c, c2, phi):
    """equiv-action, equiv-chi, equiv-operator for phi: g -> h relating c (first) and c2 (second)."""
    _check_compatible(c, c2)
    rep = Report("equivalence")
    H = c.target.algebra
    n, m = c.source.dim, c.target.dim
    if phi.shape != (m, n):
        raise DimensionMismatch("phi shape")
    for i in range(n):
        lhs = c.psi[i] - c2.psi[i]
        rhs = H.ad(phi.col(i))
        if lhs != rhs:
            for a in range(m):
                if lhs.col(a) != rhs.col(a):
                    rep.add("equiv-action", (i, a), lhs.col(a), rhs.col(a))
    for i, j in combinations(range(n), 2):
        lhs, rhs = equiv_chi_value(c, c2, phi, i, j)
        if lhs != rhs:
            rep.add("equiv-chi", (i, j), lhs, rhs)
    S, N = c.target.N, c.source.N
    lhs_m = c.F - c2.F
    rhs_m = S @ phi - phi @ N
    for i in range(n):
        if lhs_m.col(i) != rhs_m.col(i):
            rep.add("equiv-operator", (i,), lhs_m.col(i), rhs_m.col(i))
    return rep


@dataclass(frozen=True)
class EquivalenceSearch:
    """Outcome of search_equivalence.  ``phi`` is None when no witness exists;
    that verdict is a proof (linear solve) or exhaustive over ``candidates``."""

    found: bool
    phi: object
    method: str
    candidates: int


def search_equivalence(c, c2, budget=None):
    """Decide whether c ~ c2 and return a witness phi.

    equiv-action and equiv-operator are linear in phi, equiv-chi is linear when the target is
    abelian.  Otherwise the affine solution set of equiv-action and equiv-operator is enumerated
    in lexicographic order of its kernel coordinates (over F_p, under budget)
    and equiv-chi is tested on each candidate."""
    _check_compatible(c, c2)
    budget = as_budget(budget)
    F = c.field
    n, m = c.source.dim, c.target.dim
    to_phi = lambda v: map_from_colvec(F, m, n, v)

    if c.target.algebra.is_abelian():
        sol = solve_affine(F, m * n, lambda v: equiv_action_residual(c, c2, to_phi(v)) + equiv_chi_residual(c, c2, to_phi(v))
                           + equiv_operator_residual(c, c2, to_phi(v)))
        if sol.empty:
            return EquivalenceSearch(False, None, "linear", 0)
        return EquivalenceSearch(True, to_phi(sol.particular), "linear", 0)

    sol = solve_affine(F, m * n, lambda v: equiv_action_residual(c, c2, to_phi(v)) + equiv_operator_residual(c, c2, to_phi(v)))
    if sol.empty:
        return EquivalenceSearch(False, None, "linear", 0)
    k = sol.kernel.dim
    if k and not isinstance(F, PrimeField):
        raise BudgetExceeded(f"infinite (kernel dimension {k} over {F!r})", budget.max_candidates)
    count = F.order ** k if k else 1
    budget.require(count)
    seen = 0
    points = sol.kernel.affine_points(sol.particular) if k else [sol.particular]
    for phi_v in points:
        seen += 1
        phi = to_phi(phi_v)
        if not any(equiv_chi_residual(c, c2, phi)):
            return EquivalenceSearch(True, phi, "exhaustive", seen)
    return EquivalenceSearch(False, None, "exhaustive", seen)


# ---------------------------------------------------------------- abelian case

def abelian_identity_values(c):
    """Residual vectors of the chi-identity over i<j<k and the F-identity over i<j, concatenated."""
    R = c.context
    F = c.field
    L = R.algebra
    n, m = L.dim, R.dim
    chi, Fm = c.chi, c.F
    out = []
    E = [unit(F, n, t) for t in range(n)]
    rho = R.rep.rho
    for i, j, k in combinations(range(n), 3):
        out.append(((i, j, k), "chi-closed", lincomb(F, m, [
            (1, rho[i] @ chi.table[j][k]), (1, rho[j] @ chi.table[k][i]), (1, rho[k] @ chi.table[i][j]),
            (-1, chi(L.table[i][j], E[k])), (-1, chi(L.table[j][k], E[i])), (-1, chi(L.table[k][i], E[j])),
        ])))
    nab = NonAbelianCocycle(R.base, abelian_target(R), chi, rho, Fm)
    for i, j in combinations(range(n), 2):
        out.append(((i, j), "operator-chi", operator_chi_value(nab, E[i], E[j])))
    return out


def check_abelian_cocycle(c):
    rep = Report("abelian_cocycle")
    m = c.context.dim
    F = c.field
    for idx, name, v in abelian_identity_values(c):
        if any(v):
            rep.add(name, idx, v, zero_vec(F, m))
    return rep


def coboundary(R, phi):
    """(delta phi, S phi - phi N)."""
    F = R.field
    L = R.algebra
    n, m = L.dim, R.dim
    rho = R.rep.rho

    def d(i, j):
        return lincomb(F, m, [(1, rho[i] @ phi.col(j)), (-1, rho[j] @ phi.col(i)), (-1, phi @ L.table[i][j])])

    chi = Bilinear.from_pairs(F, n, m, {(i, j): d(i, j) for i, j in combinations(range(n), 2)})
    return AbelianCocycle(R, chi, R.S @ phi - phi @ R.N)


def check_cohomologous(c, c2, phi):
    return check_equivalence_witness(c.as_nonabelian(), c2.as_nonabelian(), phi)


@dataclass(frozen=True)
class H2Result:
    context: NijenhuisRepresentation
    Z: Subspace
    B: Subspace
    quotient: object

    @property
    def dim(self):
        return self.quotient.dim

    @property
    def representatives(self):
        return [AbelianCocycle.from_coords(self.context, v) for v in self.quotient.representatives]

    def coordinates(self, c):
        v = c.coords()
        if not self.Z.contains(v):
            raise NotACocycle("pair is not a 2-cocycle")
        return self.quotient.coordinates(v)

    def class_of(self, coords):
        return AbelianCocycle.from_coords(self.context, self.quotient.lift(coords))

    def is_zero_class(self, c):
        return not any(self.coordinates(c))


def cocycle_space_dim(R):
    n, m = R.base.dim, R.dim
    return m * (n * (n - 1) // 2 + n)


@lru_cache(maxsize=256)
def compute_H2(R):
    F = R.field
    n, m = R.base.dim, R.dim
    N = cocycle_space_dim(R)

    def residual(v):
        c = AbelianCocycle.from_coords(R, v)
        out = []
        for _, _, val in abelian_identity_values(c):
            out.extend(val)
        return tuple(out)

    n_eq = m * (len(list(combinations(range(n), 3))) + len(list(combinations(range(n), 2))))
    Z = kernel(linear_map_matrix(F, N, residual, n_out=n_eq))
    Bmat = linear_map_matrix(F, m * n, lambda v: coboundary(R, map_from_colvec(F, m, n, v)).coords(), n_out=N)
    B = image(Bmat)
    if not B.issubset(Z):
        raise InternalInvariantError("coboundaries are not cocycles")
    return H2Result(R, Z, B, quotient(Z, B))


def search_cohomologous(c, c2):
    """Witness phi with c - c2 = coboundary(phi), or None."""
    r = search_equivalence(c.as_nonabelian(), c2.as_nonabelian())
    return r.phi


# ---------------------------------------------------------------- Lie-algebra cocycles

@dataclass(frozen=True)
class LieCocycle:
    """Non-abelian 2-cocycle data (chi, psi) between plain Lie algebras."""

    source: LieAlgebra
    target: LieAlgebra
    chi: Bilinear
    psi: tuple

    def act(self, x, h):
        F = self.source.field
        return lincomb(F, self.target.dim, [(c, P @ h) for c, P in zip(x, self.psi) if c])


def check_lie_cocycle(lc):
    rep = Report("lie_cocycle")
    return _lie_cocycle_checks(rep, lc.source, lc.target, lc.chi, lc.psi)


def check_lie_equivalence(lc, lc2, phi):
    """First two equivalence identities for Lie cocycles (target brackets as given)."""
    rep = Report("lie_equivalence")
    F = lc.source.field
    L, H = lc.source, lc.target
    n, m = L.dim, H.dim
    for i in range(n):
        lhs = lc.psi[i] - lc2.psi[i]
        rhs = H.ad(phi.col(i))
        if lhs != rhs:
            rep.add("equiv-action", (i,), lhs.flat(), rhs.flat())
    for i, j in combinations(range(n), 2):
        pi, pj = phi.col(i), phi.col(j)
        lhs = vsub(F, lc.chi.table[i][j], lc2.chi.table[i][j])
        rhs = lincomb(F, m, [(1, lc2.psi[i] @ pj), (-1, lc2.psi[j] @ pi), (-1, phi @ L.table[i][j]), (1, H.bracket(pi, pj))])
        if lhs != rhs:
            rep.add("equiv-chi", (i, j), lhs, rhs)
    return rep


def pushforward_to_deformed(c, check=True):
    """(chi_bar, psi_bar) over the deformed algebras g_N and h_S."""
    if check:
        require_cocycle(c)
    F = c.field
    G, Hn = c.source, c.target
    n, m = G.dim, Hn.dim
    N, S, Fm = G.N, Hn.N, c.F
    L, H = G.algebra, Hn.algebra

    def chibar(x, y):
        return lincomb(F, m, [
            (1, c.chi(N @ x, y)), (1, c.chi(x, N @ y)), (-1, S @ c.chi(x, y)),
            (1, c.act(x, Fm @ y)), (-1, c.act(y, Fm @ x)), (-1, Fm @ L.bracket(x, y)),
        ])

    chi_bar = Bilinear.from_function(F, n, m, chibar)
    psi_bar = []
    for i in range(n):
        P = c.psi[i]
        psi_bar.append(c.psi_x(N.col(i)) + P @ S - S @ P + H.ad(Fm.col(i)))
    LN = deformed_algebra(G)
    HS = deformed_algebra(Hn)
    return LieCocycle(LN, HS, chi_bar, tuple(psi_bar))


def check_pushforward_equivalence(c, c2, phi):
    """If phi relates c and c2, check it relates the pushforwards."""
    return check_lie_equivalence(pushforward_to_deformed(c), pushforward_to_deformed(c2), phi)


def specialization_sides(c):
    """Both sides of the N = Id, S = Id specialization:
    (cocycle?, (chi, psi) Lie cocycle and F-image pairwise commuting?)."""
    lhs = is_cocycle(c)
    lie_ok = check_lie_cocycle(LieCocycle(c.source.algebra, c.target.algebra, c.chi, c.psi)).ok
    H = c.target.algebra
    cols = c.F.columns()
    comm = all(not any(H.bracket(a, b)) for a, b in combinations(cols, 2))
    return lhs, lie_ok and comm
