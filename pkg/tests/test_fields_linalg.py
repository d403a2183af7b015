import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from torsq import linalg as la
from torsq import polyfp as P
from torsq.fields import QQ, QQi, FieldError, Gauss, format_gauss, parse_field
from torsq.squareclass import class_of_i, is_square, sq_classify, sq_mul, trivial

nonzero_q = st.fractions(max_denominator=50).filter(bool)
gauss = st.tuples(st.integers(-30, 30), st.integers(-30, 30)).filter(any).map(lambda t: Gauss(*t))


@given(nonzero_q, nonzero_q)
def test_rational_classes_multiply(x, y):
    assert sq_classify(x * y, QQ) == sq_mul(sq_classify(x, QQ), sq_classify(y, QQ))
    assert sq_classify(x * y * y, QQ) == sq_classify(x, QQ)


@given(nonzero_q)
def test_rational_representative_is_squarefree_kernel(x):
    n = x.numerator * x.denominator
    core = -1 if n < 0 else 1
    for prime, e in sympy.factorint(abs(n)).items():
        core *= prime ** (e % 2)
    assert sq_classify(x, QQ).rep == core


@given(gauss, gauss)
def test_gaussian_classes(z, w):
    assert sq_classify(z * w * w, QQi) == sq_classify(z, QQi)
    assert sq_classify(z * w, QQi) == sq_mul(sq_classify(z, QQi), sq_classify(w, QQi))
    assert sq_classify(z * z, QQi).is_trivial


def test_gaussian_specials():
    assert sq_classify(Gauss(-1), QQi).is_trivial
    assert sq_classify(Gauss(0, 1), QQi) == class_of_i()
    assert not class_of_i().is_trivial
    # 2 = -i (1 + i)^2
    assert sq_classify(Gauss(2), QQi) == class_of_i()
    assert sq_classify(Gauss(4), QQi).is_trivial


@pytest.mark.parametrize("p", [5, 7, 13, 17])
def test_prime_field_classes_follow_legendre(p):
    F = parse_field(f"F{p}")
    for x in range(1, p):
        assert is_square(F(x), F) == (sympy.legendre_symbol(x, p) == 1)
    assert sq_classify(F(-1), F).is_trivial == (p % 4 == 1)


def test_extension_field_squares():
    F = parse_field("F5^2")
    assert F.order == 25
    # every element of F_5 is a square in F_25
    for x in range(1, 5):
        assert is_square(F(x), F)
    n = sum(1 for x in F.elements() if x and is_square(x, F))
    assert n == 12


def test_field_parsing():
    assert parse_field("Q") is QQ
    assert parse_field("Q(i)") is QQi
    assert parse_field("GF(13)").p == 13
    for bad in ("F4", "F2", "R", "F9^0x"):
        with pytest.raises(FieldError):
            parse_field(bad)


def test_gauss_formatting_round_trips():
    rng = random.Random(0)
    for _ in range(200):
        z = QQi.random(rng)
        assert QQi.parse(format_gauss(z)) == z
    assert format_gauss(Gauss(4)) == "4"
    assert QQi.parse("(-1+i)/2") == Gauss(Fraction(-1, 2), Fraction(1, 2))


def test_trivial_classes():
    for F in (QQ, QQi, parse_field("F7")):
        assert trivial(F).is_trivial


# ---------------------------------------------------------------- linear algebra

small = st.integers(-6, 6).map(Fraction)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_inverse_charpoly_against_sympy(M):
    n = len(M)
    S = sympy.Matrix(M)
    assert la.det(M, QQ) == S.det()
    cp = la.charpoly(M, QQ)
    ref = S.charpoly().all_coeffs()
    assert [sympy.Rational(c) for c in cp] in (ref, ref[::-1])
    if S.det():
        inv = la.inverse(M, QQ)
        assert la.equal(la.matmul(M, inv, QQ), la.identity(n, QQ))
    assert la.rank(M, QQ) == S.rank()


def test_prime_field_products_match_integers():
    F = parse_field("F13")
    rng = random.Random(2)
    for _ in range(20):
        A = [[rng.randrange(13) for _ in range(4)] for _ in range(3)]
        B = [[rng.randrange(13) for _ in range(5)] for _ in range(4)]
        got = la.matmul(la.coerce(A, F), la.coerce(B, F), F)
        ref = (sympy.Matrix(A) * sympy.Matrix(B)).applyfunc(lambda x: x % 13)
        assert [[x.v for x in row] for row in got] == ref.tolist()


def test_nullspace_is_kernel():
    rng = random.Random(5)
    for _ in range(20):
        M = [[Fraction(rng.randint(-2, 2)) for _ in range(5)] for _ in range(3)]
        for v in la.nullspace(M, QQ, 5):
            assert not any(la.matvec(M, v, QQ))


# ---------------------------------------------------------------- polynomials mod p

@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 13]).flatmap(
    lambda p: st.tuples(st.just(p), st.lists(st.integers(0, p - 1), min_size=2, max_size=7))))
def test_factorisation_against_sympy(pa):
    p, a = pa
    a = P.trim(a)
    if P.deg(a) < 1:
        return
    x = sympy.symbols("x")
    ref = sympy.Poly(list(reversed(a)), x, modulus=p).factor_list()[1]
    ref_degs = sorted(f.degree() for f, e in ref for _ in range(e))
    got = P.factor(a, p)
    degs = sorted(P.deg(list(f)) for f, e in got for _ in range(e))
    assert degs == ref_degs
    assert P.is_irreducible(a, p) == (ref_degs == [P.deg(a)])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7, 11]).flatmap(
    lambda p: st.tuples(st.just(p), st.lists(st.integers(0, p - 1), min_size=1, max_size=5),
                        st.lists(st.integers(0, p - 1), min_size=1, max_size=5))))
def test_resultant_against_sympy(pab):
    p, a, b = pab
    a, b = P.trim(a), P.trim(b)
    if P.deg(a) < 1 or P.deg(b) < 1:
        return
    x = sympy.symbols("x")
    ref = sympy.resultant(sympy.Poly(list(reversed(a)), x), sympy.Poly(list(reversed(b)), x)) % p
    assert P.resultant(a, b, p) % p == ref


def test_square_roots_modulo_irreducible():
    p = 7
    m = P.first_irreducible(3, p)
    rng = random.Random(1)
    for _ in range(30):
        a = [rng.randrange(p) for _ in range(3)]
        sq = P.mod(P.mul(a, a, p), m, p)
        if not P.trim(sq):
            continue
        assert P.is_square_mod(sq, m, p)
        r = P.sqrt_mod(sq, m, p)
        assert P.mod(P.mul(r, r, p), m, p) == sq
