import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from torsq import complexes as cx
from torsq import linalg as la
from torsq import suites
from torsq.fields import QQ, parse_field

dims_st = st.lists(st.integers(0, 4), min_size=2, max_size=5)


def _same(C, D):
    return (C.lo == D.lo and C.dims == D.dims
            and all(la.equal(C.d(q), D.d(q)) for q in C.degrees))


@settings(max_examples=30, deadline=None)
@given(dims_st, st.integers(-2, 2), st.integers(0, 10 ** 6))
def test_dual_and_shift(dims, lo, seed):
    C = cx.random_complex(QQ, lo, dims, random.Random(seed))
    # the sign (-1)^(q+1) makes the double dual C with -d, isomorphic to C through (-1)^q
    minus = cx.BasedComplex(QQ, C.lo, C.dims, {q: la.mneg(C.d(q)) for q in C.degrees})
    assert _same(cx.dual(cx.dual(C)), minus)
    assert _same(cx.shift(cx.shift(C, 3), -3), C)
    assert _same(cx.shift(cx.shift(C, 1), 1), cx.shift(C, 2))


@settings(max_examples=30, deadline=None)
@given(dims_st, st.integers(0, 10 ** 6))
def test_cohomology_against_sympy_ranks(dims, seed):
    C = cx.random_complex(QQ, 0, dims, random.Random(seed))
    for q in C.degrees:
        r_out = sympy.Matrix(C.d(q)).rank() if C.dim(q) and C.dim(q + 1) else 0
        r_in = sympy.Matrix(C.d(q - 1)).rank() if C.dim(q) and C.dim(q - 1) else 0
        assert C.h_dim(q) == C.dim(q) - r_out - r_in
    assert C.euler() == sum((-1) ** q * C.h_dim(q) for q in C.degrees)


@settings(max_examples=20, deadline=None)
@given(dims_st, st.integers(0, 10 ** 6))
def test_cone_of_identity_is_acyclic(dims, seed):
    C = cx.random_complex(QQ, 0, dims, random.Random(seed))
    D = cx.cone_of_identity(C)
    assert D.is_acyclic()
    assert D.euler() == 0


def test_not_a_complex():
    with pytest.raises(cx.NotAComplex):
        cx.BasedComplex(QQ, 0, [1, 1, 1], {0: [[1]], 1: [[1]]})


def test_pairing_must_be_closed():
    C = cx.random_complex(QQ, 0, [2, 0, 2], random.Random(0), ranks=[0, 0])
    with pytest.raises(cx.NotClosed):
        # T_{0,2} and T_{2,0} must be transposes up to eps
        cx.SymmetricComplex(C, 2, 1, {0: [[1, 0], [0, 1]], 2: [[1, 1], [0, 1]]})


@pytest.mark.parametrize("fname", ["Q", "F13", "F7"])
def test_abc_identity_small(fname):
    F = parse_field(fname)
    rng = random.Random(11)
    for _ in range(10):
        S = cx.random_strongly_even_skew(F, rng, n=4, maxdim=4)
        D = cx.boundary_cone(S)
        assert cx.is_strict(D)
        assert D.base.is_acyclic() or cx.is_poincare(D)
        rep = cx.verify_abc(S)
        assert rep.ok, rep.to_json()


def test_abc_needs_dimension_divisible_by_four():
    F = parse_field("F13")
    rng = random.Random(2)
    C = cx.random_complex(F, 0, [2, 2, 2], rng)
    S = cx.SymmetricComplex(C, 2, -1, cx.random_closed_pairing(C, 2, -1, rng))
    with pytest.raises(cx.PreconditionViolated):
        cx.verify_abc(S)


@pytest.mark.parametrize("fname", ["Q", "F5"])
def test_semicharacteristic_parity(fname):
    F = parse_field(fname)
    rng = random.Random(3)
    for _ in range(20):
        S = cx.random_strict_symmetric(F, rng, width=rng.randint(1, 3))
        assert cx.is_strict(S)
        C = S.base
        assert cx.semicharacteristic(C, 1) == sum(C.dim(j) for j in C.degrees if j <= 0) % 2


def test_circle_complex_matches_spinor_route():
    for rec in suites.run_named("circle", suites.field_list("Q"), 15, 1):
        assert rec["ok"], rec


def test_records_are_reproducible():
    a = list(suites.run_named("abc", suites.field_list("F13"), 5, 9))
    b = list(suites.run_named("abc", suites.field_list("F13"), 5, 9))
    assert a == b
