"""Brute-force oracle over small prime fields.

Everything here is re-derived from the defining formulas on integer arrays
mod p, sharing nothing with the main modules except the field object.  The
main modules are only touched by the converters at the bottom and by the
cross-check drivers, which compare verdicts.

Array conventions: a bracket is C[i, j, :] = [e_i, e_j]; a linear map is a
(rows, cols) array whose column j is the image of e_j; a cocycle is
(chi[i, j, :], psi[i] (m x m), F (m x n)).
"""
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import as_budget
from .errors import BudgetExceeded, InternalInvariantError

FIXTURE_PATH = Path(__file__).parent / "data" / "oracle_fixtures.json"


# ---------------------------------------------------------------- arrays

def all_arrays(p, shape, budget=None):
    """Every integer array of the given shape with entries in [0, p), as a
    batch (K, *shape), in lexicographic order of the flattened entries."""
    size = int(np.prod(shape)) if shape else 1
    count = p ** size
    as_budget(budget).require(count)
    if size == 0:
        return np.zeros((1,) + tuple(shape), dtype=np.int64)
    grids = np.indices((p,) * size).reshape(size, -1).T
    return grids.reshape((count,) + tuple(shape)).astype(np.int64)


def det_batch(M):
    """Exact integer determinant of a batch (K, d, d) by permutation expansion."""
    K, d, _ = M.shape
    out = np.zeros(K, dtype=np.int64)
    for perm in itertools.permutations(range(d)):
        inv = sum(1 for a in range(d) for b in range(a + 1, d) if perm[a] > perm[b])
        term = np.ones(K, dtype=np.int64)
        for col, row in enumerate(perm):
            term = term * M[:, row, col]
        out += -term if inv % 2 else term
    return out


def bracket(C, x, y, p):
    return np.einsum("i,j,ijk->k", x, y, C) % p


def alternating_from_upper(n, m, vals):
    """chi[i, j] for i < j taken from vals (pairs in lexicographic order)."""
    chi = np.zeros((n, n, m), dtype=np.int64)
    k = 0
    for i, j in itertools.combinations(range(n), 2):
        chi[i, j] = vals[k:k + m]
        chi[j, i] = -np.asarray(vals[k:k + m])
        k += m
    return chi


def lie_mask(Cs, p):
    """Which tables in a batch (K, n, n, n) are Lie brackets."""
    alt = np.all((Cs + Cs.transpose(0, 2, 1, 3)) % p == 0, axis=(1, 2, 3))
    diag = np.all(np.diagonal(Cs, axis1=1, axis2=2) % p == 0, axis=(1, 2))
    # [[e_i, e_j], e_k] = sum_l C[i,j,l] C[l,k,:]
    T = np.einsum("Kijl,Klkm->Kijkm", Cs, Cs)
    jac = T + T.transpose(0, 2, 3, 1, 4) + T.transpose(0, 3, 1, 2, 4)
    return alt & diag & np.all(jac % p == 0, axis=(1, 2, 3, 4))


def lie_tables(p, n, budget=None):
    """All Lie brackets on F_p^n (alternating tables satisfying Jacobi)."""
    pairs = list(itertools.combinations(range(n), 2))
    V = all_arrays(p, (len(pairs) * n,), budget)
    Cs = np.stack([alternating_from_upper(n, n, v) for v in V]) if len(V) else np.zeros((0, n, n, n), np.int64)
    return [C % p for C in Cs[lie_mask(Cs, p)]]


def torsion_batch(C, Ns, p):
    """[N e_i, N e_j] - N([N e_i, e_j] + [e_i, N e_j] - N[e_i, e_j]) for a batch of N."""
    NN = np.einsum("Kai,Kbj,abk->Kijk", Ns, Ns, C)
    A = np.einsum("Kai,ajk->Kijk", Ns, C)
    B = np.einsum("Kbj,ibk->Kijk", Ns, C)
    inner = A + B - np.einsum("Kkl,ijl->Kijk", Ns, C)
    return (NN - np.einsum("Kkl,Kijl->Kijk", Ns, inner)) % p


def nijenhuis_mask(C, Ns, p):
    return np.all(torsion_batch(C, Ns, p) == 0, axis=(1, 2, 3))


def nijenhuis_ops(C, p, budget=None):
    n = C.shape[0]
    Ns = all_arrays(p, (n, n), budget)
    return [N for N in Ns[nijenhuis_mask(C, Ns, p)]]


def derivation_mask(C, Ds, p):
    """D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]."""
    lhs = np.einsum("Kkl,ijl->Kijk", Ds, C)
    rhs = np.einsum("Kai,ajk->Kijk", Ds, C) + np.einsum("Kbj,ibk->Kijk", Ds, C)
    return np.all((lhs - rhs) % p == 0, axis=(1, 2, 3))


def morphism_mask(C, Gs, p):
    lhs = np.einsum("Kkl,ijl->Kijk", Gs, C)
    rhs = np.einsum("Kai,Kbj,abk->Kijk", Gs, Gs, C)
    return np.all((lhs - rhs) % p == 0, axis=(1, 2, 3))


def commute_mask(A, Xs, p):
    return np.all((np.einsum("ij,Kjk->Kik", A, Xs) - np.einsum("Kij,jk->Kik", Xs, A)) % p == 0, axis=(1, 2))


def nij_automorphisms(C, N, p, budget=None):
    n = C.shape[0]
    Gs = all_arrays(p, (n, n), budget)
    ok = (det_batch(Gs) % p != 0) & morphism_mask(C, Gs, p) & commute_mask(N, Gs, p)
    return Gs[ok]


def nij_derivations(C, N, p, budget=None):
    n = C.shape[0]
    Ds = all_arrays(p, (n, n), budget)
    return Ds[derivation_mask(C, Ds, p) & commute_mask(N, Ds, p)]


# ---------------------------------------------------------------- cocycles

@dataclass(frozen=True)
class Context:
    """(g, N) and (h, S) over F_p; rho fixes psi and forces h abelian."""
    p: int
    Cg: np.ndarray
    N: np.ndarray
    Ch: np.ndarray
    S: np.ndarray
    rho: object = None

    @property
    def n(self):
        return self.Cg.shape[0]

    @property
    def m(self):
        return self.Ch.shape[0]

    @property
    def abelian(self):
        return self.rho is not None


@dataclass(frozen=True)
class Cocycle:
    chi: np.ndarray
    psi: np.ndarray
    F: np.ndarray

    def key(self):
        return (self.chi.tobytes(), self.psi.tobytes(), self.F.tobytes())


def _ad(Ch, v):
    # ad_v as an m x m matrix: column b is [v, f_b]
    return np.einsum("a,abk->kb", v, Ch)


def _psi_of(psi, x):
    return np.einsum("i,iab->ab", x, psi)


def _chi(chi, x, y):
    return np.einsum("i,j,ijk->k", x, y, chi)


def cocycle_residuals(ctx, c):
    """Residuals of the defining identities, each a flat integer array mod p.
    Keys: psi-derivation, action-curvature, chi-closed, operator-action, operator-chi."""
    p, Cg, Ch, N, S = ctx.p, ctx.Cg, ctx.Ch, ctx.N, ctx.S
    n, m = ctx.n, ctx.m
    chi, psi, F = c.chi, c.psi, c.F
    eg, eh = np.eye(n, dtype=np.int64), np.eye(m, dtype=np.int64)
    out = {k: [] for k in ("psi-derivation", "action-curvature", "chi-closed", "operator-action", "operator-chi")}
    for i in range(n):
        out["psi-derivation"].append(derivation_mask(Ch, psi[i][None], p).astype(np.int64) - 1)
    for i in range(n):
        for j in range(n):
            lhs = psi[i] @ psi[j] - psi[j] @ psi[i] - _psi_of(psi, Cg[i, j])
            out["action-curvature"].append(lhs - _ad(Ch, chi[i, j]))
    for i, j, k in itertools.permutations(range(n), 3):
        v = psi[i] @ chi[j, k] - _chi(chi, Cg[i, j], eg[k])
        w = psi[j] @ chi[k, i] - _chi(chi, Cg[j, k], eg[i])
        u = psi[k] @ chi[i, j] - _chi(chi, Cg[k, i], eg[j])
        out["chi-closed"].append(v + w + u)
    for i in range(n):
        x = eg[i]
        Nx = N @ x
        adF = _ad(Ch, F @ x)
        pNx = _psi_of(psi, Nx)
        lhs = pNx @ S
        rhs = S @ (pNx + psi[i] @ S - S @ psi[i]) + S @ adF - adF @ S
        out["operator-action"].append(lhs - rhs)
    for i in range(n):
        for j in range(n):
            x, y = eg[i], eg[j]
            Nx, Ny = N @ x, N @ y
            bxy = Cg[i, j]
            dxy = bracket(Cg, Nx, y, p) + bracket(Cg, x, Ny, p) - N @ bxy
            Fx, Fy = F @ x, F @ y
            t = (_chi(chi, Nx, Ny)
                 - S @ (_chi(chi, Nx, y) + _chi(chi, x, Ny) - S @ chi[i, j])
                 - F @ dxy
                 + _psi_of(psi, Nx) @ Fy - _psi_of(psi, Ny) @ Fx
                 - S @ (psi[i] @ Fy - psi[j] @ Fx - F @ bxy)
                 + bracket(Ch, Fx, Fy, p))
            out["operator-chi"].append(t)
    return {k: (np.concatenate([np.ravel(a) for a in v]) % p if v else np.zeros(0, np.int64)) for k, v in out.items()}


def cocycle_ok_formula(ctx, c):
    return all(not r.any() for r in cocycle_residuals(ctx, c).values())


def total_structure(ctx, c):
    """Bracket and operator on g + h (g first) defined by the cocycle."""
    p, n, m = ctx.p, ctx.n, ctx.m
    d = n + m
    Ce = np.zeros((d, d, d), dtype=np.int64)
    Ce[:n, :n, :n] = ctx.Cg
    Ce[:n, :n, n:] = c.chi
    for a in range(n):
        Ce[a, n:, n:] = c.psi[a].T
        Ce[n:, a, n:] = -c.psi[a].T
    Ce[n:, n:, n:] = ctx.Ch
    U = np.zeros((d, d), dtype=np.int64)
    U[:n, :n] = ctx.N
    U[n:, n:] = ctx.S
    U[n:, :n] = c.F
    return Ce % p, U % p


def structure_ok(Ce, U, p):
    return bool(lie_mask(Ce[None], p)[0]) and bool(nijenhuis_mask(Ce, U[None], p)[0])


def cocycle_ok_extension(ctx, c):
    Ce, U = total_structure(ctx, c)
    return structure_ok(Ce, U, ctx.p)


def candidate_cocycles(ctx, budget=None):
    """Every parameter triple (valid or not), lexicographic."""
    p, n, m = ctx.p, ctx.n, ctx.m
    k_chi = m * n * (n - 1) // 2
    k_psi = 0 if ctx.abelian else n * m * m
    total = k_chi + k_psi + m * n
    as_budget(budget).require(p ** total)
    for v in itertools.product(range(p), repeat=total):
        v = np.array(v, dtype=np.int64)
        chi = alternating_from_upper(n, m, v[:k_chi]) % p
        if ctx.abelian:
            psi = np.array(ctx.rho, dtype=np.int64).reshape(n, m, m)
        else:
            psi = v[k_chi:k_chi + k_psi].reshape(n, m, m)
        F = v[k_chi + k_psi:].reshape(n, m).T.copy() if m * n else np.zeros((m, n), np.int64)
        yield Cocycle(chi, psi, F)


def enumerate_cocycles(ctx, budget=None):
    """All cocycles of the context; the identity route and the
    extension route must agree on every candidate."""
    out = []
    for c in candidate_cocycles(ctx, budget):
        a = cocycle_ok_formula(ctx, c)
        b = cocycle_ok_extension(ctx, c)
        if a != b:
            raise InternalInvariantError("oracle: identity and extension routes disagree")
        if a:
            out.append(c)
    return out


def equivalence_witnesses(ctx, c1, c2):
    """All phi: g -> h with c1 ~ c2 (c1 first), by direct evaluation."""
    p, n, m = ctx.p, ctx.n, ctx.m
    Phis = all_arrays(p, (m, n))
    ok = np.ones(len(Phis), dtype=bool)
    # equiv-action: psi1_x - psi2_x = ad_{phi x}
    for i in range(n):
        ad = np.einsum("Ka,abk->Kkb", Phis[:, :, i], ctx.Ch)
        ok &= np.all((c1.psi[i] - c2.psi[i] - ad) % p == 0, axis=(1, 2))
    # equiv-operator: F1 - F2 = S phi - phi N
    ok &= np.all((c1.F - c2.F - (np.einsum("ab,Kbj->Kaj", ctx.S, Phis) - np.einsum("Kaj,jk->Kak", Phis, ctx.N))) % p == 0, axis=(1, 2))
    # equiv-chi
    for i, j in itertools.combinations(range(n), 2):
        pi, pj = Phis[:, :, i], Phis[:, :, j]
        rhs = (np.einsum("ab,Kb->Ka", c2.psi[i], pj) - np.einsum("ab,Kb->Ka", c2.psi[j], pi)
               - np.einsum("Kak,k->Ka", Phis, ctx.Cg[i, j]) + np.einsum("Ka,Kb,abk->Kk", pi, pj, ctx.Ch))
        ok &= np.all((c1.chi[i, j] - c2.chi[i, j] - rhs) % p == 0, axis=1)
    return Phis[ok]


def equivalent(ctx, c1, c2):
    return len(equivalence_witnesses(ctx, c1, c2)) > 0


def class_partition(ctx, cocycles):
    """Classes as lists of indices; also verifies symmetry of the relation."""
    classes = []
    for k, c in enumerate(cocycles):
        for cl in classes:
            rep = cocycles[cl[0]]
            fwd, bwd = equivalent(ctx, c, rep), equivalent(ctx, rep, c)
            if fwd != bwd:
                raise InternalInvariantError("oracle: equivalence not symmetric")
            if fwd:
                cl.append(k)
                break
        else:
            classes.append([k])
    return classes


def extension_isomorphic(ctx, s1, s2):
    """Exists Phi = [[I, 0], [phi, I]] with Phi a bracket morphism (Ce1 -> Ce2)
    intertwining U1 and U2."""
    (C1, U1), (C2, U2) = s1, s2
    p, n, m = ctx.p, ctx.n, ctx.m
    d = n + m
    Phis = all_arrays(p, (m, n))
    G = np.zeros((len(Phis), d, d), dtype=np.int64)
    G[:, :n, :n] = np.eye(n, dtype=np.int64)
    G[:, n:, n:] = np.eye(m, dtype=np.int64)
    G[:, n:, :n] = Phis
    lhs = np.einsum("Kkl,ijl->Kijk", G, C1)
    rhs = np.einsum("Kai,Kbj,abk->Kijk", G, G, C2)
    ok = np.all((lhs - rhs) % p == 0, axis=(1, 2, 3))
    ok &= np.all((np.einsum("ij,Kjk->Kik", U2, G) - np.einsum("Kij,jk->Kik", G, U1)) % p == 0, axis=(1, 2))
    return bool(ok.any())


def enumerate_extensions(ctx, budget=None):
    """All extensions on g + h with canonical i, p: every bracket and
    operator compatible with i and p, filtered by Lie and Nijenhuis.

    A bracket compatible with i, p has [e_i, e_j] = ([e_i, e_j]_g, *),
    [e_i, f_a] in h, [f_a, f_b] = [f_a, f_b]_h, and the operator is
    [[N, 0], [X, S]]; the free entries are enumerated directly."""
    p, n, m = ctx.p, ctx.n, ctx.m
    d = n + m
    k1 = m * n * (n - 1) // 2
    k2 = 0 if ctx.abelian else n * m * m
    k3 = m * n
    as_budget(budget).require(p ** (k1 + k2 + k3))
    out = []
    for v in itertools.product(range(p), repeat=k1 + k2 + k3):
        Ce = np.zeros((d, d, d), dtype=np.int64)
        Ce[:n, :n, :n] = ctx.Cg
        Ce[n:, n:, n:] = ctx.Ch
        k = 0
        for i, j in itertools.combinations(range(n), 2):
            Ce[i, j, n:] = v[k:k + m]
            Ce[j, i, n:] = -np.array(v[k:k + m])
            k += m
        for a in range(n):
            for b in range(m):
                if ctx.abelian:
                    col = np.asarray(ctx.rho[a])[:, b]
                else:
                    col = np.array(v[k:k + m])
                    k += m
                Ce[a, n + b, n:] = col
                Ce[n + b, a, n:] = -col
        U = np.zeros((d, d), dtype=np.int64)
        U[:n, :n] = ctx.N
        U[n:, n:] = ctx.S
        U[n:, :n] = np.array(v[k:k + k3]).reshape(m, n)
        Ce %= p
        U %= p
        if structure_ok(Ce, U, p):
            out.append((Ce, U))
    return out


def iso_partition(ctx, exts):
    classes = []
    for k, s in enumerate(exts):
        for cl in classes:
            if extension_isomorphic(ctx, s, exts[cl[0]]):
                cl.append(k)
                break
        else:
            classes.append([k])
    return classes


def bijection_check(ctx, budget=None, h2_dim=None):
    """Cocycle classes versus extension classes, with the pointwise map
    cocycle -> built extension carrying classes onto classes bijectively."""
    cocycles = enumerate_cocycles(ctx, budget)
    exts = enumerate_extensions(ctx, budget)
    cc = class_partition(ctx, cocycles)
    ec = iso_partition(ctx, exts)
    index = {}
    for ci, cl in enumerate(ec):
        for k in cl:
            Ce, U = exts[k]
            index[(Ce.tobytes(), U.tobytes())] = ci
    image = []
    for cl in cc:
        targets = set()
        for k in cl:
            Ce, U = total_structure(ctx, cocycles[k])
            targets.add(index.get((Ce.tobytes(), U.tobytes())))
        image.append(targets)
    pointwise = all(len(t) == 1 and None not in t for t in image) and len({next(iter(t)) for t in image}) == len(ec)
    out = {
        "cocycles": len(cocycles), "extensions": len(exts),
        "cocycle_classes": len(cc), "extension_classes": len(ec),
        "class_sizes": sorted(len(c) for c in cc),
        "pointwise_bijection": pointwise,
        "counts_match": len(cc) == len(ec),
    }
    if h2_dim is not None:
        out["h2_dim"] = h2_dim
        out["p_pow_h2"] = ctx.p ** h2_dim
        out["h2_match"] = len(cc) == ctx.p ** h2_dim
    out["ok"] = out["counts_match"] and pointwise and out.get("h2_match", True)
    return out


# ---------------------------------------------------------------- lifts

def kernel_preserving_maps(p, n, m, budget=None):
    """All d x d maps on g + h sending h into h (upper right block zero)."""
    d = n + m
    free = all_arrays(p, (d * d - n * m,), budget)
    mask = np.ones((d, d), dtype=bool)
    mask[:n, n:] = False
    M = np.zeros((len(free), d, d), dtype=np.int64)
    M[:, mask] = free
    return M


def induced_aut_pairs(ctx, s, budget=None):
    """{(beta, alpha)} realised by automorphisms of (e, U) preserving h."""
    Ce, U = s
    p, n = ctx.p, ctx.n
    G = kernel_preserving_maps(p, n, ctx.m, budget)
    ok = (det_batch(G) % p != 0) & morphism_mask(Ce, G, p) & commute_mask(U, G, p)
    return {(g[n:, n:].tobytes(), g[:n, :n].tobytes()) for g in G[ok]}


def induced_der_pairs(ctx, s, budget=None):
    """{(D_V, D_g)} realised by Nijenhuis derivations of (e, U) preserving h."""
    Ce, U = s
    p, n = ctx.p, ctx.n
    D = kernel_preserving_maps(p, n, ctx.m, budget)
    ok = derivation_mask(Ce, D, p) & commute_mask(U, D, p)
    return {(x[n:, n:].tobytes(), x[:n, :n].tobytes()) for x in D[ok]}


def aut_pairs(ctx, budget=None):
    return [(b, a) for b in nij_automorphisms(ctx.Ch, ctx.S, ctx.p, budget)
            for a in nij_automorphisms(ctx.Cg, ctx.N, ctx.p, budget)]


def der_pairs(ctx, budget=None):
    """Der(V, S) x Der(g, N); for an abelian kernel Der(V, S) is every map commuting with S."""
    return [(b, a) for b in nij_derivations(ctx.Ch, ctx.S, ctx.p, budget)
            for a in nij_derivations(ctx.Cg, ctx.N, ctx.p, budget)]


# ---------------------------------------------------------------- sweep

@dataclass(frozen=True)
class Instance:
    ctx: Context
    cocycle: Cocycle


def contexts(p, n, m, budget=None):
    """All (g, N), (h, S) with dim g = n, dim h = m (general kernels)."""
    for Cg in lie_tables(p, n, budget):
        for N in nijenhuis_ops(Cg, p, budget):
            for Ch in lie_tables(p, m, budget):
                for S in nijenhuis_ops(Ch, p, budget):
                    yield Context(p, Cg, N, Ch, S)


def sweep(p=2, shapes=((1, 1), (2, 1), (1, 2)), budget=None):
    """Every cocycle (equivalently every extension on g + h) for the shapes."""
    for n, m in shapes:
        for ctx in contexts(p, n, m, budget):
            for c in enumerate_cocycles(ctx, budget):
                yield Instance(ctx, c)


def abelian_contexts(p, n, m, budget=None):
    """(g, N) with a Nijenhuis representation (rho, S) on F_p^m."""
    Ch = np.zeros((m, m, m), dtype=np.int64)
    for Cg in lie_tables(p, n, budget):
        for N in nijenhuis_ops(Cg, p, budget):
            for rv in all_arrays(p, (n, m, m), budget):
                if not rep_ok(Cg, rv, p):
                    continue
                for S in all_arrays(p, (m, m), budget):
                    if nij_rep_ok(N, rv, S, p):
                        yield Context(p, Cg, N, Ch, S, rho=tuple(map(lambda a: a.copy(), rv)))


def rep_ok(Cg, rho, p):
    n = Cg.shape[0]
    for i in range(n):
        for j in range(n):
            if ((rho[i] @ rho[j] - rho[j] @ rho[i] - _psi_of(rho, Cg[i, j])) % p).any():
                return False
    return True


def nij_rep_ok(N, rho, S, p):
    n = N.shape[0]
    for i in range(n):
        rNx = _psi_of(rho, N[:, i])
        if ((rNx @ S - S @ (rNx + rho[i] @ S - S @ rho[i])) % p).any():
            return False
    return True


# ---------------------------------------------------------------- bridges to the main modules

def to_field(ctx):
    from .exactmath import GF
    return GF(ctx.p)


def to_algebra(F, C, name=""):
    from .liecore import LieAlgebra
    n = C.shape[0]
    return LieAlgebra(F, n, [[tuple(int(x) for x in C[i, j]) for j in range(n)] for i in range(n)], name)


def to_matrix(F, A):
    from .exactmath import Matrix
    A = np.asarray(A)
    return Matrix(F, [[int(x) for x in row] for row in A], A.shape[0], A.shape[1])


def to_main_context(ctx):
    from .nijenhuis import NijenhuisLieAlgebra, NijenhuisRepresentation
    from .liecore import Representation
    F = to_field(ctx)
    G = NijenhuisLieAlgebra(to_algebra(F, ctx.Cg), to_matrix(F, ctx.N))
    H = NijenhuisLieAlgebra(to_algebra(F, ctx.Ch), to_matrix(F, ctx.S))
    if ctx.abelian:
        R = NijenhuisRepresentation(G, Representation(G.algebra, ctx.m, tuple(to_matrix(F, r) for r in ctx.rho)), H.N)
        return G, H, R
    return G, H, None


def to_main_cocycle(ctx, c):
    from .cohomology import Bilinear, NonAbelianCocycle
    F = to_field(ctx)
    G, H, _ = to_main_context(ctx)
    n, m = ctx.n, ctx.m
    chi = Bilinear(F, n, m, [[tuple(int(x) for x in c.chi[i, j]) for j in range(n)] for i in range(n)])
    psi = tuple(to_matrix(F, c.psi[i]) for i in range(n))
    return NonAbelianCocycle(G, H, chi, psi, to_matrix(F, c.F))


def from_main_algebra(L):
    n = L.dim
    return np.array([[list(L.table[i][j]) for j in range(n)] for i in range(n)], dtype=np.int64).reshape(n, n, n)


def from_main_matrix(M):
    return np.array(M.data, dtype=np.int64).reshape(M.rows, M.cols)


def enumerate_nijenhuis(L, budget=None):
    """All Nijenhuis operators on a main-module LieAlgebra over F_p, as Matrices."""
    F = L.field
    if getattr(F, "p", None) is None:
        raise BudgetExceeded("infinite", as_budget(budget).max_candidates)
    return [to_matrix(F, N) for N in nijenhuis_ops(from_main_algebra(L), F.p, budget)]


def exhaustive_inducibility_crosscheck(ctx, c, kind="aut", budget=None):
    """Compare wells_aut / wells_der against exhaustive lift enumeration for
    every pair of the instance.  Returns a dict with disagreement counts."""
    from .extensions import build_extension
    from .errors import IncompatiblePair
    from .inducibility import AutPair, DerPair, wells_aut, wells_der
    F = to_field(ctx)
    s = total_structure(ctx, c)
    E = build_extension(to_main_cocycle(ctx, c))
    out = {"pairs": 0, "inducible": 0, "disagreements": 0, "incompatible": 0, "lifts_verified": 0}
    if kind == "aut":
        realised = induced_aut_pairs(ctx, s, budget)
        for b, a in aut_pairs(ctx, budget):
            out["pairs"] += 1
            truth = (b.tobytes(), a.tobytes()) in realised
            pair = AutPair(to_matrix(F, b), to_matrix(F, a))
            try:
                w = wells_aut(E, pair, budget=budget)
                verdict = w.inducible
                if verdict:
                    out["lifts_verified"] += 1
            except IncompatiblePair:
                out["incompatible"] += 1
                verdict = False
            out["inducible"] += truth
            out["disagreements"] += verdict != truth
    else:
        realised = induced_der_pairs(ctx, s, budget)
        for b, a in der_pairs(ctx, budget):
            out["pairs"] += 1
            truth = (b.tobytes(), a.tobytes()) in realised
            w = wells_der(E, DerPair(to_matrix(F, b), to_matrix(F, a)))
            if w.inducible:
                out["lifts_verified"] += 1
            out["inducible"] += truth
            out["disagreements"] += w.inducible != truth
    return out


# ---------------------------------------------------------------- fixtures

def first_failing_operator(C, p, budget=None):
    n = C.shape[0]
    Ns = all_arrays(p, (n, n), budget)
    bad = ~nijenhuis_mask(C, Ns, p)
    return Ns[bad][0] if bad.any() else None


def generate_fixtures(budget=None):
    """Counts and instances certified by enumeration."""
    from .catalog import aff1, heisenberg, sl2
    from .exactmath import GF
    fx = {"generator": "nijlie.oracle.generate_fixtures", "version": 1}
    F2, F3 = GF(2), GF(3)
    fx["nijenhuis_counts"] = {
        "aff1_F2": len(nijenhuis_ops(from_main_algebra(aff1(F2)), 2, budget)),
        "aff1_F3": len(nijenhuis_ops(from_main_algebra(aff1(F3)), 3, budget)),
        "abelian2_F2": len(nijenhuis_ops(np.zeros((2, 2, 2), np.int64), 2, budget)),
        "heisenberg_F2": len(nijenhuis_ops(from_main_algebra(heisenberg(F2)), 2, budget)),
    }
    fails = {}
    for name, L in (("heisenberg_F3", heisenberg(F3)), ("sl2_F3", sl2(F3))):
        N = first_failing_operator(from_main_algebra(L), 3, budget)
        fails[name] = None if N is None else N.tolist()
    fx["failing_operators"] = fails
    fx["lie_table_counts_F2"] = {str(n): len(lie_tables(2, n, budget)) for n in (1, 2, 3)}
    shapes = {}
    for n, m in ((1, 1), (2, 1), (1, 2)):
        ctxs = list(contexts(2, n, m, budget))
        shapes[f"{n}x{m}"] = {"contexts": len(ctxs), "cocycles": sum(len(enumerate_cocycles(c, budget)) for c in ctxs)}
    fx["sweep_F2"] = shapes
    return fx


def write_fixtures(path=FIXTURE_PATH, budget=None):
    fx = generate_fixtures(budget)
    Path(path).write_text(json.dumps(fx, sort_keys=True, indent=2) + "\n")
    return fx


def load_fixtures(path=FIXTURE_PATH):
    return json.loads(Path(path).read_text())
