"""Standard constructions of Nijenhuis operators and representations, plus a
few named small algebras.  Every constructor checks its hypotheses and raises
``HypothesisViolation(name)`` when one fails; outputs are re-validated."""
from itertools import combinations

from .errors import DimensionMismatch, HypothesisViolation, InternalInvariantError
from .exactmath import Matrix, Subspace, QQ, lincomb, unit, vsub, zero_vec
from .liecore import LieAlgebra, Representation, check_lie, check_representation, adjoint_rep, is_bracket_morphism
from .nijenhuis import (
    NijenhuisLieAlgebra, NijenhuisRepresentation, check_nij_representation, check_nijenhuis,
    semidirect_algebra,
)


# ---------------------------------------------------------------- named algebras

def aff1(F=QQ):
    """[e0, e1] = e1."""
    return LieAlgebra.from_brackets(F, 2, [(0, 1, 1, 1)], "aff1")


def sl2(F=QQ):
    """basis h, e, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra.from_brackets(F, 3, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], "sl2")


def heisenberg(F=QQ):
    """[e0, e1] = e2."""
    return LieAlgebra.from_brackets(F, 3, [(0, 1, 2, 1)], "heis3")


def so3(F=QQ):
    return LieAlgebra.from_brackets(F, 3, [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)], "so3")


def abelian(F, n):
    return LieAlgebra.abelian(F, n)


def complex_aff1():
    """Complex aff(1) viewed as a real (here rational) 4-dim algebra with
    basis e0, i e0, e1, i e1, and j = multiplication by i."""
    F = QQ
    # [e0,e1]=e1, [ie0,e1]=ie1, [e0,ie1]=ie1, [ie0,ie1]=-e1
    L = LieAlgebra.from_brackets(F, 4, [(0, 2, 2, 1), (1, 2, 3, 1), (0, 3, 3, 1), (1, 3, 2, -1)], "aff1_C")
    j = Matrix(F, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    return L, j


def identity_nijenhuis(F, L):
    return NijenhuisLieAlgebra(L, Matrix.identity(F, L.dim))


def _validated(G):
    r = check_nijenhuis(G.algebra, G.N)
    if not r.ok:
        raise InternalInvariantError("constructed operator is not Nijenhuis: " + r.first().describe())
    return G


def _validated_rep(R):
    r = check_representation(R.rep)
    r.extend(check_nij_representation(R))
    if not r.ok:
        raise InternalInvariantError("constructed triple is not a Nijenhuis representation: " + r.first().describe())
    return R


def _require_nijenhuis(G, name="nijenhuis"):
    r = check_nijenhuis(G.algebra, G.N)
    if not r.ok:
        raise HypothesisViolation(name, r.first().describe())


# ---------------------------------------------------------------- operators

def polynomial_of_N(G, coeffs):
    """p(N) = sum coeffs[k] N^k."""
    _require_nijenhuis(G)
    F = G.field
    n = G.dim
    out = Matrix.zeros(F, n, n)
    P = Matrix.identity(F, n)
    for c in coeffs:
        if c != 0:
            out = out + P.scale(c)
        P = P @ G.N
    return _validated(NijenhuisLieAlgebra(G.algebra, out))


def projections_from_decomposition(L, basis1, basis2):
    """g = g1 + g2 as subspaces, both subalgebras.  Returns the two
    projections as Nijenhuis algebras (p1 onto g1, p2 onto g2)."""
    F = L.field
    n = L.dim
    basis1 = [tuple(F.reduce(x) for x in v) for v in basis1]
    basis2 = [tuple(F.reduce(x) for x in v) for v in basis2]
    B = Matrix.from_columns(F, n, basis1 + basis2)
    Binv = B.inverse() if B.rows == B.cols else None
    if Binv is None:
        raise HypothesisViolation("direct-sum", "bases do not form a basis of g")
    for name, basis in (("g1-subalgebra", basis1), ("g2-subalgebra", basis2)):
        W = Subspace.span(F, n, basis)
        for a, b in combinations(basis, 2):
            if not W.contains(L.bracket(a, b)):
                raise HypothesisViolation(name, "not closed under the bracket")
    k = len(basis1)
    P1 = B @ Matrix.diag(F, [1] * k + [0] * (n - k)) @ Binv
    P2 = Matrix.identity(F, n) - P1
    return _validated(NijenhuisLieAlgebra(L, P1)), _validated(NijenhuisLieAlgebra(L, P2))


def complex_structure_check(L, j):
    """Verify j^2 = -Id and [jx, y] = [x, jy] = j[x, y], then that j is Nijenhuis.
    Returns the Nijenhuis algebra (L, j)."""
    F = L.field
    n = L.dim
    if j @ j != Matrix.identity(F, n).scale(-1):
        raise HypothesisViolation("j-squared", "j^2 != -Id")
    cols = j.columns()
    for a in range(n):
        for b in range(n):
            ea, eb = unit(F, n, a), unit(F, n, b)
            jab = j @ L.table[a][b]
            if L.bracket(cols[a], eb) != jab or L.bracket(ea, cols[b]) != jab:
                raise HypothesisViolation("bi-invariance", f"fails at ({a},{b})")
    return _validated(NijenhuisLieAlgebra(L, j))


def associative_nijenhuis(F, dim, mult, N):
    """mult[i][j] = e_i . e_j (coordinate tuple) for an associative algebra.
    Checks associativity and the associative Nijenhuis identity, returns the
    commutator Lie algebra with N."""
    def prod(a, b):
        return lincomb(F, dim, [(a[i] * b[j], mult[i][j]) for i in range(dim) for j in range(dim) if a[i] and b[j]])

    E = [unit(F, dim, i) for i in range(dim)]
    for a in E:
        for b in E:
            for c in E:
                if prod(prod(a, b), c) != prod(a, prod(b, c)):
                    raise HypothesisViolation("associativity")
    for a in E:
        for b in E:
            Na, Nb = N @ a, N @ b
            inner = lincomb(F, dim, [(1, prod(Na, b)), (1, prod(a, Nb)), (-1, N @ prod(a, b))])
            if prod(Na, Nb) != N @ inner:
                raise HypothesisViolation("associative-nijenhuis")
    table = [[vsub(F, prod(E[i], E[j]), prod(E[j], E[i])) for j in range(dim)] for i in range(dim)]
    L = LieAlgebra(F, dim, table, "commutator")
    if not check_lie(L).ok:
        raise InternalInvariantError("commutator bracket is not Lie")
    return _validated(NijenhuisLieAlgebra(L, N))


def matrix_algebra_mult(F, k):
    """Structure constants of M_k(F) in the basis E_ab (row-major index a*k+b)."""
    d = k * k
    mult = [[zero_vec(F, d) for _ in range(d)] for _ in range(d)]
    for a in range(k):
        for b in range(k):
            for c in range(k):
                for e in range(k):
                    if b == c:
                        mult[a * k + b][c * k + e] = unit(F, d, a * k + e)
    return mult


def check_relative_rb(R, r):
    """[r u, r v] = r(rho_{r u} v - rho_{r v} u) on basis u, v."""
    L = R.algebra
    F = L.field
    m = R.dim
    cols = r.columns()
    for a in range(m):
        for b in range(m):
            lhs = L.bracket(cols[a], cols[b])
            rhs = r @ vsub(F, R.act(cols[a], unit(F, m, b)), R.act(cols[b], unit(F, m, a)))
            if lhs != rhs:
                return False
    return True


def rb_lift(L, R, r):
    """Lift r~(x, u) = (r u, 0) of a relative Rota-Baxter operator r: V -> g."""
    F = L.field
    n, m = L.dim, R.dim
    if r.shape != (n, m):
        raise DimensionMismatch("r must map V to g")
    if not check_representation(R).ok:
        raise HypothesisViolation("representation")
    if not check_relative_rb(R, r):
        raise HypothesisViolation("relative-rota-baxter")
    E = semidirect_algebra(NijenhuisRepresentation(NijenhuisLieAlgebra(L, Matrix.zeros(F, n, n)), R, Matrix.zeros(F, m, m)))
    rt = Matrix.block(F, [[Matrix.zeros(F, n, n), r], [Matrix.zeros(F, m, n), Matrix.zeros(F, m, m)]])
    return _validated(NijenhuisLieAlgebra(E, rt))


def rb_quotient(L, R, r1, r2):
    """r1 r2^{-1} for compatible relative Rota-Baxter operators with r2 invertible."""
    if not check_relative_rb(R, r1):
        raise HypothesisViolation("r1-rota-baxter")
    if not check_relative_rb(R, r2):
        raise HypothesisViolation("r2-rota-baxter")
    if not check_relative_rb(R, r1 + r2):
        raise HypothesisViolation("compatible")
    inv = r2.inverse() if r2.is_square() else None
    if inv is None:
        raise HypothesisViolation("r2-invertible")
    return _validated(NijenhuisLieAlgebra(L, r1 @ inv))


# ---------------------------------------------------------------- representations

def identity_representation(R):
    """(V, rho, Id) over (g, Id)."""
    F = R.field
    G = identity_nijenhuis(F, R.algebra)
    return _validated_rep(NijenhuisRepresentation(G, R, Matrix.identity(F, R.dim)))


def adjoint_nij_representation(G):
    _require_nijenhuis(G)
    return _validated_rep(NijenhuisRepresentation(G, adjoint_rep(G.algebra), G.N))


def power_representation(R, k):
    """(V, rho, S^k) over (g, N^k)."""
    G = NijenhuisLieAlgebra(R.algebra, R.N ** k)
    _require_nijenhuis(R.base)
    r = check_nij_representation(R)
    if not r.ok:
        raise HypothesisViolation("nij-representation", r.first().describe())
    return _validated_rep(NijenhuisRepresentation(G, R.rep, R.S ** k))


def induced_rep_from_morphism(G, H, Phi):
    """(h, rho_Phi, S) with (rho_Phi)_x h = [Phi x, h]."""
    _require_nijenhuis(G, "source-nijenhuis")
    _require_nijenhuis(H, "target-nijenhuis")
    if Phi.shape != (H.dim, G.dim):
        raise DimensionMismatch("Phi shape")
    if not is_bracket_morphism(G.algebra, H.algebra, Phi):
        raise HypothesisViolation("bracket-morphism")
    if H.N @ Phi != Phi @ G.N:
        raise HypothesisViolation("operator-intertwining")
    rho = [H.algebra.ad(Phi.col(i)) for i in range(G.dim)]
    return _validated_rep(NijenhuisRepresentation(G, Representation(G.algebra, H.dim, rho), H.N))


def tensor_projection_rep(R1, R2):
    """(V (x) W, rho_V (x) 1 + 1 (x) rho_W, S (x) N_W) for idempotent S, N_W.
    Basis of V (x) W is v_a (x) w_b at index a*dim W + b."""
    if R1.base != R2.base:
        raise DimensionMismatch("representations of different Nijenhuis algebras")
    for name, R in (("first", R1), ("second", R2)):
        r = check_nij_representation(R)
        if not r.ok:
            raise HypothesisViolation(f"{name}-nij-representation", r.first().describe())
        if R.S @ R.S != R.S:
            raise HypothesisViolation(f"{name}-projection")
    F = R1.field
    I1 = Matrix.identity(F, R1.dim)
    I2 = Matrix.identity(F, R2.dim)
    rho = [R1.rep.rho[i].kron(I2) + I1.kron(R2.rep.rho[i]) for i in range(R1.base.dim)]
    rep = Representation(R1.algebra, R1.dim * R2.dim, rho)
    return _validated_rep(NijenhuisRepresentation(R1.base, rep, R1.S.kron(R2.S)))


def check_admissible(G, R, zeta):
    """zeta(rho_{Nx} v) + rho_x zeta^2 v = rho_{Nx} zeta v + zeta(rho_x zeta v)."""
    for i in range(G.dim):
        rx = R.rho[i]
        rNx = R.rho_of(G.N.col(i))
        if zeta @ rNx + rx @ zeta @ zeta != rNx @ zeta + zeta @ rx @ zeta:
            return False
    return True


def dual_representation(R):
    """rho*_x = -rho_x^T on V*, in the dual basis."""
    return Representation(R.algebra, R.dim, [m.T.scale(-1) for m in R.rho])


def coadjoint_from_admissible(G, R, zeta):
    """For zeta admissible with respect to (V, rho): (V*, rho*, zeta*) with the
    dual action and transpose operator.  With V = g, rho = ad this is the
    coadjoint representation."""
    _require_nijenhuis(G)
    if zeta.shape != (R.dim, R.dim):
        raise DimensionMismatch("zeta shape")
    if not check_representation(R).ok:
        raise HypothesisViolation("representation")
    if not check_admissible(G, R, zeta):
        raise HypothesisViolation("admissible")
    return _validated_rep(NijenhuisRepresentation(G, dual_representation(R), zeta.T))


def rb_representation_lift(L, R, r, Rh, RW, mu, s):
    """Representation (h + W, sigma, s~) of (g + V, r~) built from a
    representation (Rh, RW, mu, s) of the relative Rota-Baxter algebra (L, R, r).

    mu: list over basis of h of matrices dim W x dim V (mu_h: V -> W);
    s: matrix dim h x dim W."""
    F = L.field
    n, m = L.dim, R.dim
    k, w = Rh.dim, RW.dim
    for name, rr in (("rep-V", R), ("rep-h", Rh), ("rep-W", RW)):
        if not check_representation(rr).ok:
            raise HypothesisViolation(name)
    if len(mu) != k or any(M.shape != (w, m) for M in mu) or s.shape != (k, w):
        raise DimensionMismatch("mu or s shapes")

    def mu_of(h):
        out = Matrix.zeros(F, w, m)
        for c, M in zip(h, mu):
            if c:
                out = out + M.scale(c)
        return out

    # condition 1: mu_{rho_h(x) h} v = rho_W(x) mu_h v - mu_h rho_x v
    for i in range(n):
        for a in range(k):
            ha = unit(F, k, a)
            if mu_of(Rh.rho[i] @ ha) != RW.rho[i] @ mu[a] - mu[a] @ R.rho[i]:
                raise HypothesisViolation("mu-equivariance")
    # condition 2: rho_h(r v) s w = s(rho_W(r v) w - mu_{s w} v)
    for b in range(m):
        rv = r.col(b)
        for c in range(w):
            lhs = Rh.act(rv, s.col(c))
            rhs = s @ vsub(F, RW.act(rv, unit(F, w, c)), mu_of(s.col(c)) @ unit(F, m, b))
            if lhs != rhs:
                raise HypothesisViolation("s-compatibility")
    G = rb_lift(L, R, r)
    # sigma_(x,v)(h, w) = (rho_h(x) h, rho_W(x) w - mu_h v)
    rho = []
    for i in range(n):
        rho.append(Matrix.block(F, [[Rh.rho[i], None], [None, RW.rho[i]]]) if k + w else Matrix.zeros(F, 0, 0))
    for b in range(m):
        col_blocks = [mu_of(unit(F, k, a)) @ unit(F, m, b) for a in range(k)]
        lower = Matrix.from_columns(F, w, [tuple(F.reduce(-x) for x in cb) for cb in col_blocks])
        rho.append(Matrix.block(F, [[Matrix.zeros(F, k, k), Matrix.zeros(F, k, w)], [lower, Matrix.zeros(F, w, w)]]))
    sig = Representation(G.algebra, k + w, rho)
    st = Matrix.block(F, [[Matrix.zeros(F, k, k), s], [Matrix.zeros(F, w, k), Matrix.zeros(F, w, w)]])
    return _validated_rep(NijenhuisRepresentation(G, sig, st))
