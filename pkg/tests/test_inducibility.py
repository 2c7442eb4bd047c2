from itertools import product

import pytest

from nijlie import catalog as cat
from nijlie.cohomology import AbelianCocycle, NonAbelianCocycle, check_abelian_cocycle, coboundary, compute_H2
from nijlie.errors import IncompatiblePair, LambdaInvalid, NotAutomorphism, NotDerivation, NotInvariant, NotSplit
from nijlie.exactmath import QQ, Matrix
from nijlie.extensions import abelian_cocycle, build_extension, extract_cocycle, split_extension
from nijlie.inducibility import (
    AutPair, DerPair, check_lambda, check_section_change_witness, check_der_transport, compatible_der_check, d_rho_closed,
    d_rho_space, eta, iota, is_compatible_aut, lift_automorphism, nijenhuis_automorphisms,
    split_aut_decomposition, t_aut, tau, theta_action_check, transformed_cocycle_aut, transformed_cocycle_der,
    wells_aut, wells_der, wells_sequence_aut_check, wells_sequence_der_check,
)
from nijlie.liecore import derivation_space
from nijlie.nijenhuis import nij_derivation_space, nij_derivation_space_valued

from instances import F2, F3, adjoint_context, nij, nonsplit_extensions, trivial_context


def _id_pair(E):
    F = E.field
    return AutPair(Matrix.identity(F, E.kernel.dim), Matrix.identity(F, E.quotient.dim))


def _zero_pair(E):
    F = E.field
    return DerPair(Matrix.zeros(F, E.kernel.dim, E.kernel.dim), Matrix.zeros(F, E.quotient.dim, E.quotient.dim))


def _obstructed():
    R, exts = nonsplit_extensions()
    for E in exts:
        for b in nijenhuis_automorphisms(E.kernel):
            for a in nijenhuis_automorphisms(E.quotient):
                p = AutPair(b, a)
                if is_compatible_aut(R, p) and not wells_aut(E, p).inducible:
                    return E, p
    raise AssertionError("no obstructed pair")


# ---------------------------------------------------------------- automorphisms

def test_tau_identity_and_shear():
    E = nonsplit_extensions()[1][0]
    assert tau(E, Matrix.identity(F2, 4)) == _id_pair(E)
    R = adjoint_context(QQ)
    Es = split_extension(R)
    # gamma(s x + h) = s x + h + phi x with phi = rho-compatible choice found by lifting (Id, Id)
    w = wells_aut(Es, _id_pair(Es))
    assert tau(Es, w.lift) == _id_pair(Es)


def test_tau_errors():
    E = split_extension(adjoint_context(QQ))
    swap = Matrix(QQ, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    with pytest.raises(NotAutomorphism):
        tau(E, Matrix.zeros(QQ, 4, 4))
    Et = split_extension(trivial_context(QQ, 1, 1))
    flip = Matrix(QQ, [[0, 1], [1, 0]])
    with pytest.raises(NotInvariant):
        tau(Et, flip)


def test_lambda_and_lift_identity():
    E = nonsplit_extensions()[1][0]
    zero = Matrix.zeros(F2, 2, 2)
    assert check_lambda(E, _id_pair(E), zero).ok
    assert lift_automorphism(E, _id_pair(E), zero) == Matrix.identity(F2, 4)


def test_lambda_from_actual_lift():
    E = nonsplit_extensions()[1][0]
    for b in nijenhuis_automorphisms(E.kernel):
        for a in nijenhuis_automorphisms(E.quotient):
            p = AutPair(b, a)
            try:
                w = wells_aut(E, p)
            except IncompatiblePair:
                continue
            if w.inducible:
                lam = E.i_inv_map(w.lift @ E.section - E.section @ a)
                assert check_lambda(E, p, lam).ok


def test_obstructed_pair_rejects_every_lambda():
    E, p = _obstructed()
    for v in product(range(2), repeat=4):
        lam = Matrix.from_flat(F2, 2, 2, v)
        r = check_lambda(E, p, lam)
        assert not r.ok and r.first().identity in ("lift-action", "lift-chi", "lift-operator")
        with pytest.raises(LambdaInvalid):
            lift_automorphism(E, p, lam)
    assert not wells_aut(E, p, method="exhaustive").inducible


def test_transformed_cocycle_trivial_cases():
    R, exts = nonsplit_extensions()
    c = extract_cocycle(exts[0])
    assert transformed_cocycle_aut(c, _id_pair(exts[0])) == c
    z = NonAbelianCocycle.zero(R.base, c.target)
    p = AutPair(Matrix.identity(F2, 2), Matrix.identity(F2, 2))
    assert transformed_cocycle_aut(z, p) == z


def test_transformed_cocycle_scaling_over_Q():
    R = trivial_context(QQ, 2, 1, N=[[1, 0], [0, 1]], S=[[1]])
    c = AbelianCocycle.from_coords(R, (1, 2, 3)).as_nonabelian()
    p = AutPair(Matrix(QQ, [[3]]), Matrix.diag(QQ, [2, 5]))
    t = transformed_cocycle_aut(c, p)
    # beta chi(a^-1 e0, a^-1 e1) = 3 * 1 / 10; beta F a^-1 = (3*2/2, 3*3/5)
    assert t.chi.table[0][1] == (QQ.reduce(3) / 10,)
    assert t.F.row(0) == (3, QQ.reduce(9) / 5)


def test_split_wells_vanishes():
    R = adjoint_context(F2)
    E = split_extension(R)
    for b in nijenhuis_automorphisms(E.kernel):
        for a in nijenhuis_automorphisms(E.quotient):
            p = AutPair(b, a)
            if is_compatible_aut(R, p):
                w = wells_aut(E, p)
                assert w.inducible and not any(w.obstruction)
                assert w.lift == t_aut(E, E.section, p)
            else:
                with pytest.raises(IncompatiblePair):
                    wells_aut(E, p)


def test_wells_aut_rejects_non_automorphisms():
    E = split_extension(adjoint_context(F2))
    with pytest.raises(NotAutomorphism):
        wells_aut(E, AutPair(Matrix.zeros(F2, 2, 2), Matrix.identity(F2, 2)))


def test_sequences_aut():
    r = wells_sequence_aut_check(split_extension(adjoint_context(F2)))
    assert r.ok and r.flags["nonzero W"] == 0 and r.flags["|im tau|"] == r.flags["|pairs|"]
    E, _ = _obstructed()
    r = wells_sequence_aut_check(E)
    assert r.ok and r.flags["nonzero W"] > 0
    ts, rep = split_aut_decomposition(split_extension(adjoint_context(F2)))
    assert rep.ok and rep.flags["|Aut_V|"] == rep.flags["|C_rho|"] * rep.flags["|Aut_Vg|"]
    with pytest.raises(NotSplit):
        split_aut_decomposition(E)


def test_sequence_aut_zero_kernel():
    R = trivial_context(F2, 1, 0, S=[])
    r = wells_sequence_aut_check(split_extension(R))
    assert r.ok and r.flags["|Aut_hg|"] == 1 and r.flags["nonzero W"] == 0


def test_section_change_witness():
    E, p = _obstructed()
    s2 = E.section + E.i @ Matrix(F2, [[1, 1], [0, 1]])
    assert check_section_change_witness(E, p, E.section, s2).ok


# ---------------------------------------------------------------- derivations

def test_compatibility_examples():
    R = adjoint_context(QQ)
    I = Matrix.identity(QQ, 2)
    assert compatible_der_check(R, DerPair(Matrix.zeros(QQ, 2, 2), Matrix.zeros(QQ, 2, 2)))
    assert not compatible_der_check(R, DerPair(I, I))
    # rhs is 2 rho_x v, so (Id, Id) fails in every characteristic once rho != 0
    R2 = adjoint_context(F2)
    assert not compatible_der_check(R2, DerPair(Matrix.identity(F2, 2), Matrix.identity(F2, 2)))
    assert compatible_der_check(trivial_context(QQ, 2, 2), DerPair(I, I))
    for b in nij_derivation_space(R.base).basis:
        D = Matrix.from_flat(QQ, 2, 2, b)
        assert compatible_der_check(R, DerPair(D, D))
    assert d_rho_closed(R)


def test_eta_examples():
    R, exts = nonsplit_extensions()
    E = exts[0]
    assert eta(E, Matrix.zeros(F2, 4, 4)) == _zero_pair(E)
    for b in nij_derivation_space_valued(R.base, R).basis:
        assert eta(E, iota(E, Matrix.from_flat(F2, 2, 2, b))) == _zero_pair(E)


def test_wells_der_zero_pair_and_errors():
    R, exts = nonsplit_extensions()
    E = exts[0]
    w = wells_der(E, _zero_pair(E))
    assert w.compatible and w.inducible and w.lift.is_zero()
    bad = DerPair(Matrix.zeros(F2, 2, 2), Matrix(F2, [[0, 1], [0, 0]]))
    if not nij_derivation_space(R.base).contains(bad.d_g.flat()):
        with pytest.raises(NotDerivation):
            wells_der(E, bad)


def _line_rep():
    # g = V = Q, N = S = 1, rho_e = 1
    from nijlie.liecore import LieAlgebra, Representation
    from nijlie.nijenhuis import NijenhuisRepresentation
    G = nij(LieAlgebra.abelian(QQ, 1), [[1]])
    return NijenhuisRepresentation(G, Representation(G.algebra, 1, [Matrix(QQ, [[1]])]), Matrix(QQ, [[1]]))


def test_wells_der_incompatible_is_outcome():
    E = split_extension(_line_rep())
    I = Matrix.identity(QQ, 1)
    w = wells_der(E, DerPair(I, I))
    assert not w.compatible and not w.inducible


def test_wells_der_split_vanishes():
    R = adjoint_context(F3)
    E = split_extension(R)
    D = d_rho_space(R)
    for v in D.elements():
        w = wells_der(E, DerPair.from_coords(F3, 2, 2, v))
        assert w.inducible and not any(w.obstruction)


def test_wells_der_nonsplit_obstruction():
    R, exts = nonsplit_extensions()
    nonzero = 0
    for E in exts:
        for v in d_rho_space(R).elements():
            w = wells_der(E, DerPair.from_coords(F2, 2, 2, v))
            nonzero += not w.inducible
    assert nonzero


def test_transformed_der_and_transport():
    R = adjoint_context(F3)
    p0 = DerPair(Matrix.zeros(F3, 2, 2), Matrix.zeros(F3, 2, 2))
    H2 = compute_H2(R)
    r = H2.representatives[0]
    assert transformed_cocycle_der(r, p0) == AbelianCocycle.zero(R)
    for v in list(d_rho_space(R).elements())[:9]:
        p = DerPair.from_coords(F3, 2, 2, v)
        assert transformed_cocycle_der(AbelianCocycle.zero(R), p) == AbelianCocycle.zero(R)
        t = transformed_cocycle_der(r, p)
        assert check_abelian_cocycle(t).ok
        phi = Matrix(F3, [[1, 2], [0, 1]])
        d = coboundary(R, phi)
        r2 = AbelianCocycle(R, r.chi - d.chi, r.F - d.F)
        assert check_der_transport(r, r2, phi, p).ok
    with pytest.raises(IncompatiblePair):
        transformed_cocycle_der(r, DerPair(Matrix.identity(F3, 2), Matrix.identity(F3, 2)))


def test_theta_and_sequences_der():
    R, exts = nonsplit_extensions()
    r = theta_action_check(R)
    assert r.ok and r.flags["dim H2"] == 4 and r.flags["mode"] == "enumerated"
    assert theta_action_check(trivial_context(QQ, 1, 1, N=[[1]], S=[[0]])).ok
    for E in exts + [split_extension(R)]:
        assert wells_sequence_der_check(E).ok
    r = wells_sequence_der_check(split_extension(trivial_context(F2, 2, 0, S=[])))
    assert r.ok and r.flags["dim Der(g;V)"] == 0
