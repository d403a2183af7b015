import random

import pytest
from hypothesis import given, settings, strategies as st

from torsq import linalg as la
from torsq import orth, surface, torsion
from torsq.data import fixture_path, load_rep
from torsq.fields import QQ, QQi, parse_field
from torsq.squareclass import sq_classify, sq_of_sign, sq_prod

FIELDS = ["Q", "F5", "F13", "Q(i)"]


def _product_of_reflections(F, rng, n, k):
    """A random special orthogonal map with its reflection vectors (the oracle)."""
    V = orth.random_square_disc_space(F, n, rng)
    vecs = [orth.random_anisotropic(V, rng) for _ in range(2 * k)]
    M = la.identity(n, F)
    for v in vecs:
        M = la.matmul(M, orth.reflection(V, v).mat, F)
    return orth.IsometryMap(V, M), sq_prod((sq_classify(V.pair(v, v), F) for v in vecs), F)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 3))
def test_spinor_norm_equals_reflection_product(fname, seed, half, k):
    F = parse_field(fname)
    A, expected = _product_of_reflections(F, random.Random(seed), 2 * half, k)
    assert orth.spinor_norm(A) == expected
    assert orth.spinor_norm_via_split(A) == expected
    assert orth.spinor_norm_by_reflections(A) == expected
    assert orth.l_star(A) == expected


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["Q", "F7", "F13"]), st.integers(0, 10 ** 6))
def test_det_one_minus_when_defined(fname, seed):
    F = parse_field(fname)
    rng = random.Random(seed)
    V = orth.random_square_disc_space(F, 4, rng)
    A = orth.random_special_orthogonal(V, rng)
    d = la.det(la.msub(la.identity(4, F), A.mat), F)
    if d:
        assert orth.det_one_minus(A) == orth.spinor_norm(A)
    else:
        with pytest.raises(orth.SingularOneMinus):
            orth.det_one_minus(A)


def test_cartan_dieudonne_rebuilds_the_map():
    rng = random.Random(4)
    V = orth.random_square_disc_space(QQ, 6, rng)
    A = orth.random_special_orthogonal(V, rng)
    M = la.identity(6, QQ)
    for y in orth.cartan_dieudonne(A):
        M = la.matmul(M, orth.reflection(V, y).mat, QQ)
    assert la.equal(M, A.mat)


def test_hyperbolic_identity_and_minus_identity():
    V = orth.hyperbolic(QQ, 2)
    Id = orth.IsometryMap(V, la.identity(4, QQ))
    assert orth.spinor_norm(Id).is_trivial
    assert torsion.fixed_dim(Id) == 4
    assert torsion.rt_circle(Id) == sq_of_sign(1, QQ)
    minus = orth.IsometryMap(V, la.mneg(la.identity(4, QQ)))
    # -1 on H + H has spinor norm disc = 1 (square discriminant space)
    assert orth.spinor_norm(minus).is_trivial


def test_spinor_preconditions():
    rng = random.Random(1)
    V = orth.random_square_disc_space(QQ, 4, rng)
    r = orth.reflection(V, orth.random_anisotropic(V, rng))
    with pytest.raises(orth.NotSpecialOrthogonal):
        orth.spinor_norm(r)
    W = orth.QuadraticSpace(QQ, [[1, 0], [0, 2]])
    with pytest.raises(orth.NonSquareDiscriminant):
        orth.spinor_norm(orth.IsometryMap(W, [[-1, 0], [0, -1]]))
    # a single hyperbolic plane has det -1, so -I there is refused too
    H1 = orth.hyperbolic(QQ, 1)
    with pytest.raises(orth.NonSquareDiscriminant):
        orth.spinor_norm(orth.IsometryMap(H1, la.mneg(la.identity(2, QQ))))
    with pytest.raises(orth.NotIsometry):
        orth.IsometryMap(V, [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(orth.Degenerate):
        orth.QuadraticSpace(QQ, [[1, 1], [1, 1]])


# ---------------------------------------------------------------- surface and fibred torsion

def test_twist_words_round_trip():
    t = surface.parse_twist("T4^2 T2 T3 T1")
    assert t == ((4, 2), (2, 1), (3, 1), (1, 1))
    assert surface.format_twist(t) == "T4^2 T2 T3 T1"
    with pytest.raises(surface.SurfaceError):
        surface.parse_twist("T6")
    w = surface.parse_word("a1 b1 a1^-1 b1^-1")
    assert surface.format_word(w) == "a1 b1 a1^-1 b1^-1"
    assert surface.reduce_word(w + surface.inverse_word(w)) == ()


def test_twists_are_automorphisms():
    rho = load_rep(fixture_path("appc_example1.rep")).system.rep
    for k in range(1, 6):
        for e in (1, -1):
            surface.twisted_rep(rho, ((k, e),))   # raises unless the relator still holds
        w = surface.apply_twist_word(((k, 1), (k, -1)), (1, 2, 3, 4))
        assert w == (1, 2, 3, 4)


def test_composition_order_matters_for_example_1():
    sys = load_rep(fixture_path("appc_example1.rep")).system
    with pytest.raises(surface.SurfaceError):
        surface.TwistedSystem(sys.rep, sys.twist, sys.conj, "right-first")


@pytest.mark.parametrize("name", ["appc_example1.rep", "appc_example2.rep"])
def test_fibered_examples(name):
    rf = load_rep(fixture_path(name))
    sys = rf.system
    F = sys.field
    assert F is QQi
    Ms = surface.solve_conjugator(sys.rep, sys.twisted())
    assert any(la.equal(M, sys.conj) for M in Ms)
    a, b = torsion.relator_coefficients(sys.rep), torsion.cocond_coefficients(sys.rep)
    assert all(la.equal(a[k], b[k]) for k in a)
    op = torsion.cocycle_operator(sys)
    assert la.equal(op.tmat, rf.expect["ttilde"])
    assert torsion.check_commuting_square(sys, op)
    assert torsion.h1_determinant(sys) == F.one
    res = torsion.rt_fibered(sys)
    assert res.det_one_minus_ttilde == rf.expect["det_1_minus_ttilde"]
    assert res.det_one_minus_minv == rf.expect["det_1_minus_minv"]
    assert res.h == 0
    assert res.sqclass == sq_classify(rf.expect["class"], F)


def test_binary_tetrahedral_group():
    G = surface.binary_tetrahedral()
    assert len(G) == 24
    keys = {tuple(tuple(x) for x in M) for M in G}
    for A in G[:6]:
        for B in G:
            C = la.matmul(A, B, QQi)
            assert tuple(tuple(x) for x in C) in keys
