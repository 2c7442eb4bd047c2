"""Small named instances shared by the test modules."""
from nijlie import catalog as cat
from nijlie.exactmath import GF, QQ, Matrix
from nijlie.liecore import LieAlgebra, Representation, adjoint_rep
from nijlie.nijenhuis import NijenhuisLieAlgebra, NijenhuisRepresentation

F2, F3 = GF(2), GF(3)


def nij(L, N):
    return NijenhuisLieAlgebra(L, Matrix(L.field, N))


def adjoint_context(F, N=None):
    """aff1 with N (default Id) acting on itself by ad, S = N."""
    L = cat.aff1(F)
    G = NijenhuisLieAlgebra(L, Matrix(F, N) if N is not None else Matrix.identity(F, 2))
    return cat.adjoint_nij_representation(G)


def trivial_context(F, n=1, m=1, N=None, S=None):
    L = LieAlgebra.abelian(F, n)
    G = NijenhuisLieAlgebra(L, Matrix(F, N) if N is not None else Matrix.identity(F, n))
    R = Representation.trivial(L, m)
    return NijenhuisRepresentation(G, R, Matrix(F, S) if S is not None else Matrix.identity(F, m))


def catalog_instances(F):
    """(label, object) for every constructor of the catalog over F, dim <= 4."""
    out = []
    aff = cat.aff1(F)
    G = nij(aff, [[1, 0], [1, 1]])
    out.append(("identity", cat.identity_nijenhuis(F, cat.sl2(F))))
    out.append(("polynomial", cat.polynomial_of_N(G, [1, 2, 1])))
    p1, p2 = cat.projections_from_decomposition(aff, [(1, 0)], [(0, 1)])
    out += [("projection-1", p1), ("projection-2", p2)]
    if F == QQ:
        L, j = cat.complex_aff1()
        out.append(("complex-structure", cat.complex_structure_check(L, j)))
    N = Matrix.diag(F, [1, 1, 0, 0])
    out.append(("associative", cat.associative_nijenhuis(F, 4, cat.matrix_algebra_mult(F, 2), N)))
    triv = Representation.trivial(aff, 1)
    r = Matrix(F, [[1], [1]])
    out.append(("rb-lift", cat.rb_lift(aff, triv, r)))
    ab = LieAlgebra.abelian(F, 2)
    t2 = Representation.trivial(ab, 2)
    out.append(("rb-quotient", cat.rb_quotient(ab, t2, Matrix(F, [[1, 2], [0, 1]]), Matrix.identity(F, 2))))
    out.append(("identity-rep", cat.identity_representation(adjoint_rep(cat.sl2(F)))))
    out.append(("adjoint-rep", cat.adjoint_nij_representation(G)))
    Rad = cat.adjoint_nij_representation(G)
    out.append(("power-rep", cat.power_representation(Rad, 2)))
    Gid = cat.identity_nijenhuis(F, aff)
    out.append(("morphism-rep", cat.induced_rep_from_morphism(Gid, cat.identity_nijenhuis(F, cat.sl2(F)),
                                                              Matrix(F, [[F.inv(2), 0], [0, 1], [0, 0]]))))
    P = nij(aff, [[1, 0], [0, 1]])
    R1 = cat.adjoint_nij_representation(P)
    R2 = NijenhuisRepresentation(P, Representation.trivial(aff, 2), Matrix.diag(F, [1, 0]))
    out.append(("tensor-rep", cat.tensor_projection_rep(R1, R2)))
    out.append(("coadjoint", cat.coadjoint_from_admissible(Gid, adjoint_rep(aff), Matrix.identity(F, 2))))
    k1 = Representation.trivial(aff, 1)
    out.append(("rb-rep-lift", cat.rb_representation_lift(aff, triv, r, k1, k1, [Matrix.zeros(F, 1, 1)],
                                                          Matrix(F, [[1]]))))
    return out


def nonsplit_extensions(F=F2):
    """Adjoint aff1 context (N = S = Id) and the extensions built from its H^2 basis."""
    from nijlie.cohomology import compute_H2
    from nijlie.extensions import extension_from_abelian
    R = adjoint_context(F)
    return R, [extension_from_abelian(r) for r in compute_H2(R).representatives]
