import pytest

from nijlie import catalog as cat
from nijlie import oracle as O
from nijlie.cohomology import (
    AbelianCocycle, NonAbelianCocycle, check_cohomologous, check_equivalence_witness, compute_H2,
    search_equivalence,
)
from nijlie.errors import KernelNotAbelian, NotACocycle, NotASection, WitnessInvalid
from nijlie.exactmath import QQ, Matrix
from nijlie.extensions import (
    Extension, abelian_cocycle, build_extension, build_isomorphism, check_extension, check_extension_iso,
    extract_cocycle, induced_representation, is_split, roundtrip_isomorphism, split_extension,
)
from nijlie.liecore import LieAlgebra

from instances import F2, F3, adjoint_context, nij, nonsplit_extensions, trivial_context


def test_split_extension_valid_and_cocycle_is_action():
    R = adjoint_context(QQ, [[2, 0], [0, 3]])
    E = split_extension(R)
    assert check_extension(E).ok
    c = extract_cocycle(E)
    assert c.chi.is_zero() and c.F.is_zero() and c.psi == R.rep.rho
    assert induced_representation(E).rep.rho == R.rep.rho
    s = is_split(E)
    assert s == E.section


def test_zero_map_p_fails_surjectivity():
    E = split_extension(adjoint_context(QQ))
    bad = Extension(E.kernel, E.total, E.quotient, E.i, Matrix.zeros(QQ, 2, 4))
    assert "surjectivity" in check_extension(bad).identities()


def test_build_extract_roundtrip_exact():
    for ctx in O.contexts(2, 1, 2):
        for oc in O.enumerate_cocycles(ctx)[:6]:
            c = O.to_main_cocycle(ctx, oc)
            E = build_extension(c)
            assert extract_cocycle(E) == c
            Eb, Phi = roundtrip_isomorphism(E, E.section + E.i @ Matrix(F2, [[1], [0]]))
            assert check_extension_iso(Eb, E, Phi).ok


def test_zero_cocycle_gives_direct_product():
    G = nij(cat.aff1(QQ), [[2, 0], [0, 3]])
    H = nij(LieAlgebra.abelian(QQ, 1), [[5]])
    E = build_extension(NonAbelianCocycle.zero(G, H))
    assert E.total.N == Matrix.diag(QQ, [2, 3, 5])
    assert E.total.algebra.table[0][2] == (0, 0, 0)


def test_build_rejects_non_cocycle():
    G = nij(LieAlgebra.abelian(QQ, 2), [[0, 0], [0, 0]])
    H = nij(cat.aff1(QQ), [[0, 0], [0, 0]])
    c = NonAbelianCocycle(G, H, NonAbelianCocycle.zero(G, H).chi, (Matrix.zeros(QQ, 2, 2),) * 2,
                          Matrix.identity(QQ, 2))
    with pytest.raises(NotACocycle):
        build_extension(c)


def test_two_sections_give_equivalent_cocycles():
    R, exts = nonsplit_extensions()
    for E in exts:
        s = E.section
        phi = Matrix(F2, [[1, 0], [1, 1]])
        s2 = s + E.i @ phi
        c1, c2 = extract_cocycle(E, s), extract_cocycle(E, s2)
        # witness relates (c at s) to (c at s~) via i^-1 (s - s~)
        assert check_equivalence_witness(c1, c2, E.i_inv_map(s - s2)).ok
        assert induced_representation(E, s2).rep.rho == induced_representation(E, s).rep.rho


def test_h2_representatives_roundtrip_and_not_split():
    R, exts = nonsplit_extensions()
    H2 = compute_H2(R)
    for r, E in zip(H2.representatives, exts):
        back = abelian_cocycle(E)
        res = search_equivalence(back.as_nonabelian(), r.as_nonabelian())
        assert res.found
        assert is_split(E) is None


def test_nonsplit_confirmed_by_section_exhaustion():
    from itertools import product
    from nijlie.nijenhuis import is_nij_morphism
    R, exts = nonsplit_extensions()
    E = exts[0]
    for v in product(range(2), repeat=4):
        s = E.section + E.i @ Matrix.from_flat(F2, 2, 2, v)
        assert not is_nij_morphism(E.quotient, E.total, s)


def test_zero_H2_context_always_splits():
    R = trivial_context(QQ, 1, 1, N=[[1]], S=[[0]])
    assert compute_H2(R).dim == 0
    for v in [(1,), (3,)]:
        c = AbelianCocycle.from_coords(R, v)
        assert is_split(build_extension(c.as_nonabelian())) is not None


def test_build_isomorphism():
    R = adjoint_context(F3)
    r = compute_H2(R).representatives[0]
    from nijlie.cohomology import coboundary
    phi0 = Matrix(F3, [[1, 0], [2, 1]])
    d = coboundary(R, phi0)
    r2 = AbelianCocycle(R, r.chi - d.chi, r.F - d.F)
    E, E2 = build_extension(r.as_nonabelian()), build_extension(r2.as_nonabelian())
    res = search_equivalence(r.as_nonabelian(), r2.as_nonabelian())
    Phi = build_isomorphism(E, E2, res.phi)
    assert check_extension_iso(E, E2, Phi).ok
    assert build_isomorphism(E, E, Matrix.zeros(F3, 2, 2)) == Matrix.identity(F3, 4)
    with pytest.raises(WitnessInvalid):
        build_isomorphism(E, E2, res.phi + Matrix.identity(F3, 2))


def test_iso_check_negative():
    E = split_extension(adjoint_context(QQ))
    assert check_extension_iso(E, E, Matrix.identity(QQ, 4)).ok
    scale = Matrix.diag(QQ, [1, 1, 2, 2])
    assert "kernel" in check_extension_iso(E, E, scale).identities()


def test_kernel_not_abelian():
    G = nij(cat.aff1(QQ), [[1, 0], [0, 1]])
    E = build_extension(NonAbelianCocycle.zero(G, nij(cat.aff1(QQ), [[1, 0], [0, 1]])))
    with pytest.raises(KernelNotAbelian):
        induced_representation(E)
    with pytest.raises(KernelNotAbelian):
        is_split(E)


def test_bad_section():
    E = split_extension(adjoint_context(QQ))
    with pytest.raises(NotASection):
        extract_cocycle(E, Matrix.zeros(QQ, 4, 2))
