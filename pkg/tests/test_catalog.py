import pytest

from nijlie import catalog as cat
from nijlie.errors import DimensionMismatch, HypothesisViolation
from nijlie.exactmath import QQ, Matrix
from nijlie.liecore import LieAlgebra, Representation, adjoint_rep, check_lie, check_representation
from nijlie.nijenhuis import NijenhuisLieAlgebra, NijenhuisRepresentation, check_nij_representation, check_nijenhuis

from instances import F3, catalog_instances, nij


@pytest.mark.parametrize("F", [QQ, F3], ids=["Q", "F3"])
def test_every_instance_validates(F):
    for label, obj in catalog_instances(F):
        if isinstance(obj, NijenhuisLieAlgebra):
            assert check_lie(obj.algebra).ok, label
            assert check_nijenhuis(obj.algebra, obj.N).ok, label
        else:
            assert check_representation(obj.rep).ok, label
            assert check_nij_representation(obj).ok, label


def test_named_algebras_are_lie():
    for f in (cat.aff1, cat.sl2, cat.heisenberg, cat.so3):
        assert check_lie(f(QQ)).ok
    assert cat.abelian(QQ, 3).is_abelian()


def test_polynomial_rejects_non_nijenhuis():
    H = cat.heisenberg(F3)
    with pytest.raises(HypothesisViolation):
        cat.polynomial_of_N(nij(H, [[0, 0, 0], [0, 0, 0], [0, 0, 1]]), [0, 1])


def test_projection_hypotheses():
    L = cat.aff1(QQ)
    with pytest.raises(HypothesisViolation):
        cat.projections_from_decomposition(L, [(1, 0)], [(2, 0)])
    S = cat.sl2(QQ)
    with pytest.raises(HypothesisViolation):
        cat.projections_from_decomposition(S, [(0, 1, 0), (0, 0, 1)], [(1, 0, 0)])


def test_complex_structure_hypotheses():
    L, j = cat.complex_aff1()
    assert check_nijenhuis(L, j).ok
    with pytest.raises(HypothesisViolation):
        cat.complex_structure_check(L, Matrix.identity(QQ, 4))
    A = cat.aff1(QQ)
    with pytest.raises(HypothesisViolation):
        cat.complex_structure_check(A, Matrix(QQ, [[0, -1], [1, 0]]))


def test_associative_hypotheses():
    mult = cat.matrix_algebra_mult(QQ, 2)
    G = cat.associative_nijenhuis(QQ, 4, mult, Matrix.diag(QQ, [1, 1, 0, 0]))
    assert G.dim == 4
    with pytest.raises(HypothesisViolation):
        cat.associative_nijenhuis(QQ, 4, mult, Matrix.diag(QQ, [1, 2, 3, 4]))


def test_rota_baxter_hypotheses():
    A = cat.aff1(QQ)
    ad = adjoint_rep(A)
    with pytest.raises(HypothesisViolation):
        cat.rb_lift(A, ad, Matrix.identity(QQ, 2))
    with pytest.raises(DimensionMismatch):
        cat.rb_lift(A, Representation.trivial(A, 1), Matrix.identity(QQ, 2))
    ab = LieAlgebra.abelian(QQ, 2)
    t2 = Representation.trivial(ab, 2)
    with pytest.raises(HypothesisViolation):
        cat.rb_quotient(ab, t2, Matrix.identity(QQ, 2), Matrix.zeros(QQ, 2, 2))


def test_representation_constructors():
    A = cat.aff1(QQ)
    G = nij(A, [[2, 0], [0, 3]])
    R = cat.adjoint_nij_representation(G)
    P = cat.power_representation(R, 2)
    assert P.S == Matrix.diag(QQ, [4, 9]) and P.base.N == P.S
    Gid = cat.identity_nijenhuis(QQ, A)
    with pytest.raises(HypothesisViolation):
        cat.induced_rep_from_morphism(Gid, Gid, Matrix(QQ, [[0, 1], [1, 0]]))
    with pytest.raises(HypothesisViolation):
        cat.induced_rep_from_morphism(G, Gid, Matrix.identity(QQ, 2))
    R2 = NijenhuisRepresentation(G, Representation.trivial(A, 1), Matrix(QQ, [[2]]))
    with pytest.raises(HypothesisViolation):
        cat.tensor_projection_rep(R, R2)


def test_coadjoint():
    A = cat.aff1(QQ)
    Gid = cat.identity_nijenhuis(QQ, A)
    R = cat.coadjoint_from_admissible(Gid, adjoint_rep(A), Matrix.identity(QQ, 2))
    assert R.rep.rho[0] == adjoint_rep(A).rho[0].T.scale(-1)
    assert cat.check_admissible(Gid, adjoint_rep(A), Matrix.identity(QQ, 2))


def test_powers_of_nijenhuis_are_compatible():
    # N^k and N^l compatible (their sum is Nijenhuis) for k, l <= 2, on every Nijenhuis N of heisenberg over F2
    from nijlie import oracle as O
    from nijlie.exactmath import GF
    L = cat.heisenberg(GF(2))
    ops = O.enumerate_nijenhuis(L)
    for N in ops:
        pw = [Matrix.identity(GF(2), 3), N, N @ N]
        for k in range(3):
            for l in range(k, 3):
                assert check_nijenhuis(L, pw[k]).ok
                assert check_nijenhuis(L, pw[k] + pw[l]).ok
