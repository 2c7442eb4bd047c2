"""Inducibility of automorphism and derivation pairs in extensions.

For an extension E with section s write M = [s | i] for the basis change
g + h -> e.  A map on e that preserves i(h) is then block lower triangular in
that basis, which is how lifts are assembled:

    gamma = [s alpha + i lambda | i beta] M^{-1}
    D     = [s D_g + i phi     | i D_V ] M^{-1}
"""
from dataclasses import dataclass, field
from itertools import combinations, product

from .config import as_budget
from .errors import (
    BudgetExceeded, DimensionMismatch, IncompatiblePair, InternalInvariantError, LambdaInvalid,
    NotACocycle, NotAutomorphism, NotDerivation, NotInvariant, NotSplit,
)
from .exactmath import Matrix, PrimeField, Subspace, kernel, lincomb, linear_map_matrix, unit, vsub, zero_vec
from .liecore import is_automorphism, is_bracket_morphism, is_derivation, end_from_flat
from .nijenhuis import nij_derivation_space, nij_derivation_space_valued
from .cohomology import (
    AbelianCocycle, Bilinear, NonAbelianCocycle, check_abelian_cocycle, check_cohomologous,
    check_nonabelian_cocycle, coboundary, compute_H2, map_from_colvec, search_equivalence,
)
from .extensions import (
    _section, abelian_cocycle, extract_cocycle, induced_representation, is_split,
)
from .report import Report


@dataclass(frozen=True)
class AutPair:
    beta: Matrix
    alpha: Matrix

    def compose(self, other):
        return AutPair(self.beta @ other.beta, self.alpha @ other.alpha)


@dataclass(frozen=True)
class DerPair:
    d_V: Matrix
    d_g: Matrix

    def bracket(self, other):
        return DerPair(self.d_V.commutator(other.d_V), self.d_g.commutator(other.d_g))

    def coords(self):
        return self.d_V.flat() + self.d_g.flat()

    @classmethod
    def from_coords(cls, F, m, n, v):
        return cls(Matrix.from_flat(F, m, m, v[:m * m]), Matrix.from_flat(F, n, n, v[m * m:]))


@dataclass
class WellsReport:
    kind: str
    method: str
    compatible: bool
    inducible: bool
    witness: object = None
    obstruction: object = None
    lift: object = None
    candidates: int = 0

    def to_data(self):
        def m(x):
            return None if x is None else [[str(a) for a in r] for r in x.data]
        return {
            "kind": self.kind,
            "method": self.method,
            "compatible": self.compatible,
            "inducible": self.inducible,
            "witness": m(self.witness),
            "obstruction": None if self.obstruction is None else [str(a) for a in self.obstruction],
            "lift": m(self.lift),
            "candidates": self.candidates,
        }


# ---------------------------------------------------------------- helpers

def adapted_basis(E, s):
    """M = [s | i]: columns s(e_0..), i(e_0..)."""
    return Matrix.block(E.field, [[s, E.i]])


def assemble(E, s, top, bottom):
    """Map on e sending s x -> top x and i h -> bottom h."""
    M = adapted_basis(E, s)
    return Matrix.block(E.field, [[top, bottom]]) @ M.inverse()


def is_nij_automorphism(G, A):
    return A.is_invertible() and A @ G.N == G.N @ A and is_bracket_morphism(G.algebra, G.algebra, A)


def is_nij_derivation(G, D):
    return D @ G.N == G.N @ D and is_derivation(G.algebra, D)


def preserves_kernel(E, T):
    from .exactmath import image
    I = image(E.i)
    return all(I.contains(T @ c) for c in E.i.columns())


def _invertible_matrices(F, n, budget):
    if not isinstance(F, PrimeField):
        raise BudgetExceeded(f"infinite (GL_{n} over {F!r})", budget.max_candidates)
    budget.require(F.p ** (n * n))
    for v in product(range(F.p), repeat=n * n):
        A = Matrix.from_flat(F, n, n, v)
        if A.is_invertible():
            yield A


def nijenhuis_automorphisms(G, budget=None):
    """Aut(g, N) by enumeration over F_p."""
    budget = as_budget(budget)
    return [A for A in _invertible_matrices(G.field, G.dim, budget) if is_nij_automorphism(G, A)]


# ---------------------------------------------------------------- automorphisms

def tau(E, gamma, s=None):
    """(gamma|_h, p gamma s)."""
    s = _section(E, s)
    if not is_nij_automorphism(E.total, gamma):
        raise NotAutomorphism("gamma is not an automorphism of (e, U)")
    if not preserves_kernel(E, gamma):
        raise NotInvariant("gamma does not preserve i(h)")
    beta = E.i_inv_map(gamma @ E.i)
    alpha = E.p @ gamma @ s
    s2 = s + E.i @ Matrix(E.field, [[1] * E.quotient.dim for _ in range(E.kernel.dim)], E.kernel.dim, E.quotient.dim)
    if E.p @ gamma @ s2 != alpha:
        raise InternalInvariantError("p gamma s depends on the section")
    if not is_nij_automorphism(E.kernel, beta) or not is_nij_automorphism(E.quotient, alpha):
        raise InternalInvariantError("tau(gamma) is not a pair of Nijenhuis automorphisms")
    return AutPair(beta, alpha)


def check_lambda(E, pair, lam, s=None, c=None):
    """lift-action, lift-chi, lift-operator for lambda: g -> h."""
    s = _section(E, s)
    if c is None:
        c = extract_cocycle(E, s)
    rep = Report("lambda")
    F = E.field
    n, m = E.quotient.dim, E.kernel.dim
    H, L = E.kernel.algebra, E.quotient.algebra
    beta, alpha = pair.beta, pair.alpha
    S, N = E.kernel.N, E.quotient.N
    for i in range(n):
        lhs = beta @ c.psi[i] - c.psi_x(alpha.col(i)) @ beta
        rhs = H.ad(lam.col(i)) @ beta
        if lhs != rhs:
            for a in range(m):
                if lhs.col(a) != rhs.col(a):
                    rep.add("lift-action", (i, a), lhs.col(a), rhs.col(a))
    for i, j in combinations(range(n), 2):
        ai, aj = alpha.col(i), alpha.col(j)
        li, lj = lam.col(i), lam.col(j)
        lhs = vsub(F, beta @ c.chi.table[i][j], c.chi(ai, aj))
        rhs = lincomb(F, m, [(1, c.act(ai, lj)), (-1, c.act(aj, li)), (-1, lam @ L.table[i][j]), (1, H.bracket(li, lj))])
        if lhs != rhs:
            rep.add("lift-chi", (i, j), lhs, rhs)
    lhs_m = beta @ c.F - c.F @ alpha
    rhs_m = S @ lam - lam @ N
    for i in range(n):
        if lhs_m.col(i) != rhs_m.col(i):
            rep.add("lift-operator", (i,), lhs_m.col(i), rhs_m.col(i))
    return rep


def lift_automorphism(E, pair, lam, s=None):
    """gamma(s x + h) = s(alpha x) + beta h + lambda x, verified."""
    s = _section(E, s)
    r = check_lambda(E, pair, lam, s)
    if not r.ok:
        raise LambdaInvalid(r.first().describe())
    gamma = assemble(E, s, s @ pair.alpha + E.i @ lam, E.i @ pair.beta)
    if not is_nij_automorphism(E.total, gamma):
        raise InternalInvariantError("lift is not an automorphism of (e, U)")
    if E.i_inv_map(gamma @ E.i) != pair.beta or E.p @ gamma @ s != pair.alpha:
        raise InternalInvariantError("lift does not restrict to the pair")
    return gamma


def transformed_cocycle_aut(c, pair):
    """(beta chi(a^-1, a^-1), beta psi_{a^-1 x} beta^-1, beta F a^-1)."""
    ainv = pair.alpha.inverse()
    binv = pair.beta.inverse()
    if ainv is None or binv is None:
        raise NotAutomorphism("pair is not invertible")
    chi = c.chi.pullback(ainv).map_values(pair.beta)
    psi = tuple(pair.beta @ c.psi_x(ainv.col(i)) @ binv for i in range(c.source.dim))
    return NonAbelianCocycle(c.source, c.target, chi, psi, pair.beta @ c.F @ ainv)


def is_compatible_aut(R, pair):
    """beta rho_x = rho_{alpha x} beta."""
    return all(pair.beta @ R.rep.rho[i] == R.rep.rho_of(pair.alpha.col(i)) @ pair.beta for i in range(R.base.dim))


def _require_aut_pair(E, pair):
    if not is_nij_automorphism(E.kernel, pair.beta):
        raise NotAutomorphism("beta is not in Aut(h, S)")
    if not is_nij_automorphism(E.quotient, pair.alpha):
        raise NotAutomorphism("alpha is not in Aut(g, N)")


def wells_aut(E, pair, s=None, budget=None, method="auto"):
    """Decide inducibility of (beta, alpha).

    Abelian kernel: the class of the transformed pair minus the original in
    H^2 (linear algebra), only defined on compatible pairs.  Non-abelian
    kernel: equivalence search between the transformed cocycle and the
    original, lambda = phi alpha.  method="exhaustive" enumerates lambda
    directly against lift-action, lift-chi, lift-operator instead."""
    s = _section(E, s)
    _require_aut_pair(E, pair)
    F = E.field
    n, m = E.quotient.dim, E.kernel.dim
    c = extract_cocycle(E, s)
    if method == "exhaustive":
        budget = as_budget(budget)
        if not isinstance(F, PrimeField):
            raise BudgetExceeded("infinite", budget.max_candidates)
        budget.require(F.p ** (m * n))
        k = 0
        for v in product(range(F.p), repeat=m * n):
            k += 1
            lam = map_from_colvec(F, m, n, v)
            if check_lambda(E, pair, lam, s, c).ok:
                return WellsReport("aut", "exhaustive", True, True, lam, None, lift_automorphism(E, pair, lam, s), k)
        return WellsReport("aut", "exhaustive", True, False, None, None, None, k)

    ct = transformed_cocycle_aut(c, pair)
    if E.kernel.algebra.is_abelian():
        R = induced_representation(E, s)
        if not is_compatible_aut(R, pair):
            raise IncompatiblePair("beta rho_x != rho_{alpha x} beta")
        H2 = compute_H2(R)
        diff = AbelianCocycle(R, ct.chi - c.chi, ct.F - c.F)
        coords = H2.coordinates(diff)
        res = search_equivalence(ct, c, budget)
        if res.found == any(coords):
            raise InternalInvariantError("H^2 class and witness search disagree")
        if not res.found:
            return WellsReport("aut", "linear", True, False, None, coords)
        lam = res.phi @ pair.alpha
        return WellsReport("aut", "linear", True, True, lam, coords, lift_automorphism(E, pair, lam, s))

    res = search_equivalence(ct, c, budget)
    if not res.found:
        return WellsReport("aut", res.method, True, False, None, None, None, res.candidates)
    lam = res.phi @ pair.alpha
    return WellsReport("aut", res.method, True, True, lam, None, lift_automorphism(E, pair, lam, s), res.candidates)


def check_section_change_witness(E, pair, s1, s2):
    """For two sections, the transformed-minus-original data are related by
    beta phi alpha^-1 - phi, phi = i^-1(s1 - s2).  Checked on the pieces:
    transformed cocycles related by beta phi alpha^-1, originals by phi."""
    c1, c2 = extract_cocycle(E, s1), extract_cocycle(E, s2)
    phi = E.i_inv_map(s1 - s2)
    t1, t2 = transformed_cocycle_aut(c1, pair), transformed_cocycle_aut(c2, pair)
    r = Report("section_independence")
    r.extend(check_nonabelian_cocycle(t1), "transformed")
    r.extend(check_equivalence_witness_safe(c1, c2, phi), "original")
    r.extend(check_equivalence_witness_safe(t1, t2, pair.beta @ phi @ pair.alpha.inverse()), "transformed")
    if E.kernel.algebra.is_abelian():
        R = induced_representation(E, s1)
        d1 = AbelianCocycle(R, t1.chi - c1.chi, t1.F - c1.F)
        d2 = AbelianCocycle(R, t2.chi - c2.chi, t2.F - c2.F)
        w = pair.beta @ phi @ pair.alpha.inverse() - phi
        r.extend(check_cohomologous(d1, d2, w), "difference")
    return r


def check_equivalence_witness_safe(c1, c2, phi):
    from .cohomology import check_equivalence_witness
    return check_equivalence_witness(c1, c2, phi)


# ---------------------------------------------------------------- sequences (automorphisms)

def automorphisms_fixing_kernel(E, s=None, budget=None):
    """Aut_h(e, U) enumerated as M [[a, 0], [l, b]] M^{-1} over all invertible
    a, b and all l, keeping the Nijenhuis automorphisms of e."""
    budget = as_budget(budget)
    s = _section(E, s)
    F = E.field
    n, m = E.quotient.dim, E.kernel.dim
    if not isinstance(F, PrimeField):
        raise BudgetExceeded("infinite", budget.max_candidates)
    budget.require(F.p ** (n * n + m * m + m * n))
    As = list(_invertible_matrices(F, n, budget))
    Bs = list(_invertible_matrices(F, m, budget))
    out = []
    for a in As:
        for b in Bs:
            for v in product(range(F.p), repeat=m * n):
                lam = map_from_colvec(F, m, n, v)
                g = assemble(E, s, s @ a + E.i @ lam, E.i @ b)
                if is_nij_automorphism(E.total, g):
                    out.append(g)
    return out


def wells_sequence_aut_check(E, s=None, budget=None):
    """Exactness of 1 -> Aut_{h,g} -> Aut_h -tau-> pairs -W-> H^2 by enumeration.
    Pairs are Aut(h,S) x Aut(g,N), or the compatible pairs C_rho when the
    kernel is abelian."""
    budget = as_budget(budget)
    s = _section(E, s)
    F = E.field
    n, m = E.quotient.dim, E.kernel.dim
    rep = Report("wells_sequence_aut")
    abelian = E.kernel.algebra.is_abelian()
    Aut_h = automorphisms_fixing_kernel(E, s, budget)
    Id_m, Id_n = Matrix.identity(F, m), Matrix.identity(F, n)
    taus = {}
    for g in Aut_h:
        taus[g] = tau(E, g, s)
    kernel_tau = {g for g, t in taus.items() if t.beta == Id_m and t.alpha == Id_n}
    # independent description: gamma(s x + h) = s x + h + i lambda(x)
    direct = set()
    for v in product(range(F.p), repeat=m * n):
        lam = map_from_colvec(F, m, n, v)
        g = assemble(E, s, s + E.i @ lam, E.i)
        if is_nij_automorphism(E.total, g):
            direct.add(g)
    if direct != kernel_tau:
        rep.add("exact-at-Aut_h", (), len(direct), len(kernel_tau))
    # tau is a homomorphism
    gl = list(taus)
    for g1, g2 in list(product(gl[:12], repeat=2)):
        if tau(E, g1 @ g2, s) != taus[g1].compose(taus[g2]):
            rep.add("tau-homomorphism")
            break
    Aut_hS = nijenhuis_automorphisms(E.kernel, budget)
    Aut_gN = nijenhuis_automorphisms(E.quotient, budget)
    pairs = [AutPair(b, a) for b in Aut_hS for a in Aut_gN]
    if abelian:
        R = induced_representation(E, s)
        pairs = [p for p in pairs if is_compatible_aut(R, p)]
        for t in taus.values():
            if not is_compatible_aut(R, t):
                rep.add("tau-into-C_rho")
                break
    image = set(taus.values())
    kerW = set()
    nonzero = 0
    for p in pairs:
        w = wells_aut(E, p, s, budget)
        if w.inducible:
            kerW.add(p)
        else:
            nonzero += 1
    if image != kerW:
        rep.add("exact-at-pairs", (), len(image), len(kerW))
    if len(Aut_h) != len(kernel_tau) * len(image):
        rep.add("order-count", (), len(Aut_h), (len(kernel_tau), len(image)))
    rep.flags.update({
        "abelian": abelian, "|Aut_h|": len(Aut_h), "|Aut_hg|": len(kernel_tau), "|pairs|": len(pairs),
        "|im tau|": len(image), "|ker W|": len(kerW), "nonzero W": nonzero,
    })
    return rep


def t_aut(E, s, pair):
    """gamma_(beta, alpha)(s x + u) = s(alpha x) + beta u."""
    return assemble(E, s, s @ pair.alpha, E.i @ pair.beta)


def split_aut_decomposition(E, budget=None):
    """t: C_rho -> Aut_V(e, U) for a split abelian extension, with checks."""
    budget = as_budget(budget)
    s0 = is_split(E)
    if s0 is None:
        raise NotSplit("extension does not split")
    R = induced_representation(E, s0)
    rep = Report("split_aut")
    pairs = [AutPair(b, a) for b in nijenhuis_automorphisms(E.kernel, budget)
             for a in nijenhuis_automorphisms(E.quotient, budget)]
    C = [p for p in pairs if is_compatible_aut(R, p)]
    ts = {}
    for p in C:
        g = t_aut(E, s0, p)
        if not is_nij_automorphism(E.total, g) or not preserves_kernel(E, g):
            rep.add("t-into-Aut_V")
            continue
        if tau(E, g, s0) != p:
            rep.add("tau-t-identity")
        ts[p] = g
    for p1, p2 in product(C, repeat=2):
        if t_aut(E, s0, p1.compose(p2)) != t_aut(E, s0, p1) @ t_aut(E, s0, p2):
            rep.add("t-homomorphism")
            break
    Aut_V = automorphisms_fixing_kernel(E, s0, budget)
    Id_m, Id_n = Matrix.identity(E.field, E.kernel.dim), Matrix.identity(E.field, E.quotient.dim)
    Aut_Vg = [g for g in Aut_V if tau(E, g, s0) == AutPair(Id_m, Id_n)]
    if len(Aut_V) != len(C) * len(Aut_Vg):
        rep.add("order-count", (), len(Aut_V), (len(C), len(Aut_Vg)))
    rep.flags.update({"|Aut_V|": len(Aut_V), "|C_rho|": len(C), "|Aut_Vg|": len(Aut_Vg)})
    return ts, rep


# ---------------------------------------------------------------- derivations

def eta(E, D, s=None):
    """(D|_V, p D s)."""
    s = _section(E, s)
    if not is_nij_derivation(E.total, D):
        raise NotDerivation("D is not a Nijenhuis derivation of (e, U)")
    if not preserves_kernel(E, D):
        raise NotInvariant("D does not preserve i(V)")
    dV = E.i_inv_map(D @ E.i)
    dg = E.p @ D @ s
    s2 = s + E.i @ Matrix(E.field, [[1] * E.quotient.dim for _ in range(E.kernel.dim)], E.kernel.dim, E.quotient.dim)
    if E.p @ D @ s2 != dg:
        raise InternalInvariantError("p D s depends on the section")
    pair = DerPair(dV, dg)
    if E.kernel.algebra.is_abelian():
        R = induced_representation(E, s)
        if not compatible_der_check(R, pair):
            raise InternalInvariantError("eta(D) violates the compatibility identity")
    return pair


def iota(E, d):
    return E.i @ d @ E.p


def der_pair_residual(R, pair):
    """(S D_V - D_V S, Leibniz(D_g), N D_g - D_g N, D_V rho_x - rho_x D_V - rho_{D_g x})."""
    from .liecore import leibniz_residual
    G = R.base
    out = list((R.S @ pair.d_V - pair.d_V @ R.S).flat())
    out.extend(leibniz_residual(G.algebra, pair.d_g))
    out.extend((G.N @ pair.d_g - pair.d_g @ G.N).flat())
    for i in range(G.dim):
        out.extend((pair.d_V @ R.rep.rho[i] - R.rep.rho[i] @ pair.d_V - R.rep.rho_of(pair.d_g.col(i))).flat())
    return tuple(out)


def compatible_der_check(R, pair):
    """Compatibility: D_V rho_x v = rho_{D_g x} v + rho_x D_V v."""
    return all(pair.d_V @ R.rep.rho[i] == R.rep.rho_of(pair.d_g.col(i)) + R.rep.rho[i] @ pair.d_V
               for i in range(R.base.dim))


def is_der_pair(R, pair):
    """D_V in Der(V, S) and D_g in Der(g, N)."""
    return pair.d_V @ R.S == R.S @ pair.d_V and is_nij_derivation(R.base, pair.d_g)


def d_rho_space(R):
    """D_rho as a subspace of (flat D_V, flat D_g) coordinates."""
    F = R.field
    n, m = R.base.dim, R.dim
    k = m * m + n * n
    A = linear_map_matrix(F, k, lambda v: der_pair_residual(R, DerPair.from_coords(F, m, n, v)),
                          n_out=m * m + n * n * (n - 1) // 2 + n * n + n * m * m)
    return kernel(A)


def d_rho_closed(R, space=None):
    space = space or d_rho_space(R)
    F = R.field
    n, m = R.base.dim, R.dim
    pairs = [DerPair.from_coords(F, m, n, b) for b in space.basis]
    return all(space.contains(p.bracket(q).coords()) for p, q in combinations(pairs, 2))


def der_e_space(E):
    """Der_V(e, U) as flattened d x d matrices."""
    from .liecore import leibniz_residual
    F = E.field
    d = E.total.dim
    T = E.total

    def residual(v):
        D = end_from_flat(F, d, v)
        return leibniz_residual(T.algebra, D) + (T.N @ D - D @ T.N).flat() + (E.p @ D @ E.i).flat()

    A = linear_map_matrix(F, d * d, residual, n_out=d * d * (d - 1) // 2 + d * d + E.quotient.dim * E.kernel.dim)
    return kernel(A)


def transformed_cocycle_der(c, pair, check=True):
    """(D_V chi - chi(D_g, -) - chi(-, D_g), D_V F - F D_g)."""
    R = c.context
    if check:
        if not compatible_der_check(R, pair):
            raise IncompatiblePair("pair violates the compatibility identity")
        r = check_abelian_cocycle(c)
        if not r.ok:
            raise NotACocycle(r.first().describe())
    F = c.field
    n, m = R.base.dim, R.dim
    Dg = pair.d_g
    chi = Bilinear.from_function(F, n, m, lambda x, y: lincomb(F, m, [
        (1, pair.d_V @ c.chi(x, y)), (-1, c.chi(Dg @ x, y)), (-1, c.chi(x, Dg @ y))]))
    out = AbelianCocycle(R, chi, pair.d_V @ c.F - c.F @ Dg)
    if check and not check_abelian_cocycle(out).ok:
        raise InternalInvariantError("transformed pair is not a cocycle")
    return out


def theta_matrix(R, pair):
    """Matrix of Theta(pair) on H^2 coordinates."""
    H2 = compute_H2(R)
    cols = [H2.coordinates(transformed_cocycle_der(r, pair, check=False)) for r in H2.representatives]
    return Matrix.from_columns(R.field, H2.dim, cols)


def theta_action_check(R, budget=None):
    """Theta([p, q]) = [Theta p, Theta q] on H^2, plus well-definedness on classes.
    All pairs of D_rho elements when the enumeration fits the budget, else
    pairs of basis elements (the identity is bilinear)."""
    budget = as_budget(budget)
    F = R.field
    n, m = R.base.dim, R.dim
    H2 = compute_H2(R)
    D = d_rho_space(R)
    rep = Report("theta_action")
    rep.flags.update({"dim H2": H2.dim, "dim D_rho": D.dim})
    if H2.dim == 0:
        return rep
    if isinstance(F, PrimeField) and F.p ** (2 * D.dim) <= budget.max_candidates:
        elems = [DerPair.from_coords(F, m, n, v) for v in D.elements()]
        rep.flags["mode"] = "enumerated"
    else:
        elems = [DerPair.from_coords(F, m, n, v) for v in D.basis]
        rep.flags["mode"] = "basis"
    thetas = {p: theta_matrix(R, p) for p in elems}
    for p, q in product(elems, repeat=2):
        lhs = theta_matrix(R, p.bracket(q))
        rhs = thetas[p].commutator(thetas[q])
        if lhs != rhs:
            rep.add("representation", (), lhs.flat(), rhs.flat())
    # well-definedness: shifting a representative by coboundaries
    for p in (elems[:4] if len(elems) > 4 else elems):
        for r in H2.representatives:
            base = H2.coordinates(transformed_cocycle_der(r, p, check=False))
            for b in H2.B.basis:
                shifted = AbelianCocycle.from_coords(R, lincomb(F, len(b), [(1, r.coords()), (1, b)]))
                if H2.coordinates(transformed_cocycle_der(shifted, p, check=False)) != base:
                    rep.add("well-defined")
    rep.flags["pairs"] = len(elems)
    return rep


def wells_der(E, pair, s=None):
    """Inducibility of (D_V, D_g) in an abelian extension."""
    s = _section(E, s)
    R = induced_representation(E, s)
    if not is_der_pair(R, pair):
        raise NotDerivation("pair is not in Der(V,S) x Der(g,N)")
    if not compatible_der_check(R, pair):
        return WellsReport("der", "linear", False, False)
    c = abelian_cocycle(E, s)
    ct = transformed_cocycle_der(c, pair)
    H2 = compute_H2(R)
    coords = H2.coordinates(ct)
    res = search_equivalence(ct.as_nonabelian(), AbelianCocycle.zero(R).as_nonabelian())
    if res.found == any(coords):
        raise InternalInvariantError("H^2 class and witness solve disagree")
    if not res.found:
        return WellsReport("der", "linear", True, False, None, coords)
    phi = res.phi
    D = lift_derivation(E, s, pair, phi)
    return WellsReport("der", "linear", True, True, phi, coords, D)


def lift_derivation(E, s, pair, phi):
    """D(s x + u) = s D_g x + D_V u + phi x, verified."""
    D = assemble(E, s, s @ pair.d_g + E.i @ phi, E.i @ pair.d_V)
    if not is_nij_derivation(E.total, D):
        raise InternalInvariantError("lift is not a Nijenhuis derivation")
    if eta(E, D, s) != pair:
        raise InternalInvariantError("eta(lift) differs from the pair")
    return D


def t_der(E, s, pair):
    return assemble(E, s, s @ pair.d_g, E.i @ pair.d_V)


def _subspace_of(F, dim, vectors):
    return Subspace.span(F, dim, vectors)


def wells_sequence_der_check(E, s=None, budget=None):
    """Exactness of 0 -> Der((g,N);(V,S)) -iota-> Der_V(e,U) -eta-> D_rho -W-> H^2
    by exact subspace comparisons."""
    budget = as_budget(budget)
    s = _section(E, s)
    F = E.field
    n, m, d = E.quotient.dim, E.kernel.dim, E.total.dim
    R = induced_representation(E, s)
    rep = Report("wells_sequence_der")
    Dg = nij_derivation_space_valued(R.base, R)
    De = der_e_space(E)
    Dr = d_rho_space(R)
    H2 = compute_H2(R)
    # iota
    iotas = [iota(E, Matrix.from_flat(F, m, n, b)).flat() for b in Dg.basis]
    im_iota = _subspace_of(F, d * d, iotas)
    if im_iota.dim != Dg.dim:
        rep.add("iota-injective", (), im_iota.dim, Dg.dim)
    if not im_iota.issubset(De):
        rep.add("iota-into-Der_V")
    # eta as a linear map on Der_V coordinates
    etas = []
    for b in De.basis:
        etas.append(eta(E, end_from_flat(F, d, b), s).coords())
    im_eta = _subspace_of(F, m * m + n * n, etas)
    if not im_eta.issubset(Dr):
        rep.add("eta-into-D_rho")
    # ker eta inside Der_V
    if De.dim:
        Emat = Matrix.from_columns(F, m * m + n * n, etas)
        K = kernel(Emat)
        ker_eta = _subspace_of(F, d * d, [lincomb(F, d * d, zip(k, De.basis)) for k in K.basis])
    else:
        ker_eta = Subspace.zero(F, d * d)
    if ker_eta != im_iota:
        rep.add("exact-at-Der_V", (), ker_eta.dim, im_iota.dim)
    # W on D_rho coordinates
    c = abelian_cocycle(E, s)
    Wcols = [H2.coordinates(transformed_cocycle_der(c, DerPair.from_coords(F, m, n, b))) for b in Dr.basis]
    if Dr.dim and H2.dim:
        Kw = kernel(Matrix.from_columns(F, H2.dim, Wcols))
        ker_W = _subspace_of(F, m * m + n * n, [lincomb(F, m * m + n * n, zip(k, Dr.basis)) for k in Kw.basis])
    else:
        ker_W = Dr
    if ker_W != im_eta:
        rep.add("exact-at-D_rho", (), ker_W.dim, im_eta.dim)
    # pointwise over D_rho when it can be enumerated
    if isinstance(F, PrimeField) and F.p ** Dr.dim <= budget.max_candidates:
        bad = 0
        for v in Dr.elements():
            w = wells_der(E, DerPair.from_coords(F, m, n, v), s)
            if w.inducible != im_eta.contains(v):
                bad += 1
        if bad:
            rep.add("pointwise", (), bad, 0)
        rep.flags["pointwise"] = F.p ** Dr.dim
    rep.flags.update({"dim Der(g;V)": Dg.dim, "dim Der_V(e)": De.dim, "dim D_rho": Dr.dim,
                      "dim im eta": im_eta.dim, "dim H2": H2.dim})
    s0 = is_split(E, s)
    rep.flags["split"] = s0 is not None
    if s0 is not None:
        if De.dim != Dr.dim + Dg.dim:
            rep.add("split-dimension", (), De.dim, Dr.dim + Dg.dim)
        ps = [DerPair.from_coords(F, m, n, b) for b in Dr.basis]
        for p in ps:
            T = t_der(E, s0, p)
            if not De.contains(T.flat()):
                rep.add("t-into-Der_V")
            elif eta(E, T, s0) != p:
                rep.add("eta-t-identity")
        for p, q in combinations(ps, 2):
            if t_der(E, s0, p.bracket(q)) != t_der(E, s0, p).commutator(t_der(E, s0, q)):
                rep.add("t-bracket-morphism")
    return rep


def check_der_transport(c, c2, phi, pair):
    """Transformed cohomologous pairs are cohomologous via D_V phi - phi D_g."""
    t1 = transformed_cocycle_der(c, pair)
    t2 = transformed_cocycle_der(c2, pair)
    return check_cohomologous(t1, t2, pair.d_V @ phi - phi @ pair.d_g)
