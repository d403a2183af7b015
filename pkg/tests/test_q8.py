from fractions import Fraction

import pytest
import sympy

from torsq import hyperell as H
from torsq import q8

# (alpha label, central value, square-free part, pairing) per example curve
FROZEN = {
    5: [("11:1", 8, 2, 1), ("13:0", 0, None, 1)],
    11: [("10:1", 18, 2, 1), ("12:1", 2, 2, 1)],
    13: [("10:1", 18, 2, 1), ("12:1", 2, 2, 1)],
}


@pytest.fixture(scope="module")
def datum5():
    return q8.build_datum(5, q8.paper_quartic(5))


@pytest.fixture(scope="module")
def datum11():
    return q8.build_datum(11, q8.paper_quartic(11))


def test_form_to_quartic():
    assert q8.paper_quartic(5) == (3, 3, 4, 3, 3)
    with pytest.raises(q8.Q8Error):
        q8.quartic_from_form(5, [1, 1, 0, 0, 0, 0, 0, 0, 1])
    with pytest.raises(q8.Q8Error):
        q8.quartic_from_form(5, [1, 0, 1])


@pytest.mark.parametrize("p", sorted(FROZEN))
def test_frozen_instances(p):
    reps = q8.verify_curve(p, q8.paper_quartic(p))
    got = [(r.alpha_id, r.central, r.central_sqclass, r.pairing) for r in reps]
    assert got == FROZEN[p]
    assert all(all(r.checks.values()) for r in reps)


def test_squarefree_part_oracle():
    for n in (1, 2, 8, 18, 32, 50, 72, 98, 120):
        core = 1
        for prime, e in sympy.factorint(n).items():
            core *= prime ** (e % 2)
        assert q8.square_class_int(n).rep == core


def test_admissibility_conditions(datum5):
    found = q8.enumerate_alphas(datum5, orbits=False)
    assert found
    for al in found:
        assert q8.alpha_inf(datum5, al) == 2
        assert any(x % 2 for x in al.a)
        assert q8.canonical_alpha(datum5, al) == 0
        assert q8.alphares_check(datum5, al)
    loose = q8.enumerate_alphas(datum5, "nontrivial", orbits=False)
    assert {a.key() for a in found} <= {a.key() for a in loose}


@pytest.mark.parametrize("name", ["datum5", "datum11"])
def test_orbit_invariants(name, request):
    d = request.getfixturevalue(name)
    for al in q8.enumerate_alphas(d, orbits=False):
        c = q8.central_value(d, al)
        pair = q8.chern_pairing(d, al)
        for other in q8.orbit(al):
            assert q8.admissible(d, other)
            assert q8.central_value(d, other) == c
            assert q8.chern_pairing(d, other) == pair


@pytest.mark.parametrize("name", ["datum5", "datum11"])
def test_iota_pullback_is_in_orbit(name, request):
    d = request.getfixturevalue(name)
    for al in q8.enumerate_alphas(d, orbits=False):
        keys = {o.key() for o in q8.orbit(al)}
        assert q8.iota_pullback(d, al).key() in keys


@pytest.mark.parametrize("name", ["datum5", "datum11"])
def test_two_routes_to_l2_and_pairing(name, request):
    d = request.getfixturevalue(name)
    for al in q8.enumerate_alphas(d, orbits=False):
        L = q8.l_coefficients(d, al)
        assert q8.l2_direct(d, al) == L[2]
        assert q8.check_l_structure(d, L) == []
        assert q8.central_from_polynomial(d, L) == Fraction(q8.central_value(d, al, L))
        # the elementwise image of ker(2 alpha_0) decides the pairing too
        direct = 0 if d.zero_minus_inf in q8.norm_image(d, al) else 1
        assert direct == q8.chern_pairing(d, al)


def test_datum_errors():
    with pytest.raises(q8.QZeroSquare):
        q8.build_datum(5, (1, 0, 0, 0, 1))
    with pytest.raises(H.NotSquarefree):
        q8.build_datum(5, (2, 1, 3, 3, 1))     # (x - 1)^2 (x^2 + 2)
    with pytest.raises(H.BadDegree):
        q8.build_datum(5, (2, 1, 1))


def test_square_leading_coefficient_admits_no_character():
    # leading coefficient 1 is a square, so D_inf pulls back split and alpha(D_inf) = 2 fails
    Q = next(Q for Q in q8.admissible_quartics(5) if Q[4] == 1)
    d = q8.build_datum(5, Q)
    assert q8.enumerate_alphas(d) == []


def test_sweep_keys_are_canonical():
    qs = q8.admissible_quartics(5)
    assert len(qs) == len(set(qs))
    for Q in qs[:30]:
        assert q8.quartic_orbit_key(5, Q) == Q
        assert q8.quartic_orbit_key(5, tuple(4 * c % 5 for c in Q)) == Q
