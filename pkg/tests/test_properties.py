"""Randomized invariants (hypothesis)."""
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nijlie import catalog as cat
from nijlie.cohomology import AbelianCocycle, check_abelian_cocycle, coboundary, compute_H2
from nijlie.exactmath import GF, QQ, Matrix, Subspace, image, kernel, solve
from nijlie.extensions import build_extension, extract_cocycle, is_split
from nijlie.inducibility import DerPair, d_rho_space, transformed_cocycle_der
from nijlie.liecore import check_lie
from nijlie.nijenhuis import NijenhuisLieAlgebra, check_nijenhuis, deformed_algebra

from instances import adjoint_context

SET = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
primes = st.sampled_from([2, 3, 5, 7, 101])


def matrices(F, rows, cols):
    elt = small_q if F is QQ else st.integers(0, F.p - 1)
    return st.lists(st.lists(elt, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda d: Matrix(F, d))


@SET
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity_Q(r, c, data):
    A = data.draw(matrices(QQ, r, c))
    assert kernel(A).dim + image(A).dim == c
    for v in kernel(A).basis:
        assert not any(A @ v)


@SET
@given(primes, st.integers(1, 4), st.data())
def test_solve_is_sound_Fp(p, n, data):
    F = GF(p)
    A = data.draw(matrices(F, n, n))
    b = tuple(data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)))
    sol = solve(A, b)
    if sol.empty:
        assert tuple(F.reduce(x) for x in b) not in image(A)
    else:
        assert A @ sol.particular == tuple(F.reduce(x) for x in b)


@SET
@given(st.data())
def test_subspace_canonical(data):
    vs = data.draw(st.lists(st.lists(small_q, min_size=3, max_size=3).map(tuple), min_size=1, max_size=4))
    S = Subspace.span(QQ, 3, vs)
    T = Subspace.span(QQ, 3, list(reversed(vs)) + [tuple(a + b for a, b in zip(vs[0], vs[-1]))])
    assert S == T and S.basis == T.basis


@SET
@given(st.sampled_from(["aff1", "sl2", "heisenberg", "so3"]), st.data())
def test_polynomials_of_nijenhuis_are_nijenhuis(name, data):
    L = getattr(cat, name)(GF(5))
    G = cat.identity_nijenhuis(GF(5), L)
    coeffs = data.draw(st.lists(st.integers(0, 4), min_size=1, max_size=3))
    P = cat.polynomial_of_N(G, coeffs)
    assert check_nijenhuis(L, P.N).ok
    assert check_lie(deformed_algebra(P)).ok


@SET
@given(st.data())
def test_dim2_operators_nijenhuis_and_deformation_lie(data):
    F = GF(7)
    N = data.draw(matrices(F, 2, 2))
    L = cat.aff1(F)
    assert check_nijenhuis(L, N).ok
    LN = deformed_algebra(NijenhuisLieAlgebra(L, N))
    assert check_lie(LN).ok
    # N is a morphism from the deformed bracket to the original one
    assert all(N @ LN.table[i][j] == L.bracket(N.col(i), N.col(j)) for i in range(2) for j in range(2))


@SET
@given(st.data())
def test_h2_invariant_under_coboundary_shift_and_roundtrip(data):
    F = GF(3)
    R = adjoint_context(F)
    H2 = compute_H2(R)
    k = data.draw(st.integers(0, H2.dim - 1))
    phi = data.draw(matrices(F, 2, 2))
    r = H2.representatives[k]
    d = coboundary(R, phi)
    c = AbelianCocycle(R, r.chi + d.chi, r.F + d.F)
    assert check_abelian_cocycle(c).ok
    assert H2.coordinates(c) == H2.coordinates(r)
    E = build_extension(c.as_nonabelian())
    assert extract_cocycle(E) == c.as_nonabelian()
    assert is_split(E) is None


@SET
@given(st.data())
def test_transformed_der_is_cocycle(data):
    F = GF(3)
    R = adjoint_context(F)
    D = d_rho_space(R)
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=D.dim, max_size=D.dim))
    v = tuple(sum(c * b[i] for c, b in zip(coeffs, D.basis)) % 3 for i in range(8))
    pair = DerPair.from_coords(F, 2, 2, v)
    phi = data.draw(matrices(F, 2, 2))
    t = transformed_cocycle_der(coboundary(R, phi), pair)
    assert check_abelian_cocycle(t).ok
    assert not any(compute_H2(R).coordinates(t))
