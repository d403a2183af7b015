"""Quadratic spaces, isometries and spinor norms.

The spinor norm of a special orthogonal A on a space V of square
discriminant is computed as

    det(1 - A | W) * disc(V+)

where V+ and V- are the generalised +1 and -1 eigenspaces and W is the
A-invariant complement.  ``spinor_norm_by_reflections`` is an independent
route through an explicit Cartan-Dieudonne factorisation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from . import linalg as la
from .squareclass import SquareClass, sq_classify, sq_mul, sq_prod, trivial


class OrthError(ValueError):
    pass


class Degenerate(OrthError):
    pass


class NotIsometry(OrthError):
    pass


class NotSpecialOrthogonal(OrthError):
    pass


class NonSquareDiscriminant(OrthError):
    pass


class SingularOneMinus(OrthError):
    pass


@dataclass(frozen=True, eq=False)
class QuadraticSpace:
    field: object
    gram: list
    dim: int = field(init=False)
    require_even: bool = True

    def __post_init__(self):
        F = self.field
        G = la.coerce(self.gram, F)
        object.__setattr__(self, "gram", G)
        object.__setattr__(self, "dim", len(G))
        n = len(G)
        if any(len(r) != n for r in G):
            raise Degenerate("Gram matrix is not square")
        if not la.equal(G, la.transpose(G)):
            raise Degenerate("Gram matrix is not symmetric")
        if n and not la.det(G, F):
            raise Degenerate("Gram matrix is singular")
        if self.require_even and n % 2:
            raise Degenerate("quadratic space must be even-dimensional")

    def pair(self, x, y):
        F = self.field
        return sum((a * b for a, b in zip(x, la.matvec(self.gram, y, F)) if a and b), F.zero)


@dataclass(frozen=True, eq=False)
class IsometryMap:
    space: QuadraticSpace
    mat: list

    def __post_init__(self):
        F = self.space.field
        A = la.coerce(self.mat, F)
        object.__setattr__(self, "mat", A)
        G = self.space.gram
        if la.shape(A) != (self.space.dim, self.space.dim):
            raise NotIsometry("matrix size does not match the space")
        if not la.equal(la.matmul(la.matmul(la.transpose(A), G, F), A, F), G):
            raise NotIsometry("A^T G A != G")

    @property
    def det(self):
        return la.det(self.mat, self.space.field)

    @property
    def special(self) -> bool:
        return self.det == self.space.field.one

    @classmethod
    def trusted(cls, space: QuadraticSpace, mat) -> "IsometryMap":
        """Skip the isometry check; for matrices that are isometries by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "space", space)
        object.__setattr__(obj, "mat", mat)
        return obj

    def __matmul__(self, other: "IsometryMap") -> "IsometryMap":
        return IsometryMap.trusted(self.space, la.matmul(self.mat, other.mat, self.space.field))

    def inverse(self) -> "IsometryMap":
        return IsometryMap(self.space, la.inverse(self.mat, self.space.field))


@dataclass(frozen=True)
class EigenSplit:
    v_plus: list
    v_minus: list
    w: list


def discriminant(V) -> SquareClass:
    """Square class of det(Gram); accepts a QuadraticSpace or a bare (field, gram) pair."""
    if isinstance(V, QuadraticSpace):
        F, G = V.field, V.gram
    else:
        F, G = V
    d = la.det(G, F)
    if not d:
        raise Degenerate("degenerate form")
    return sq_classify(d, F)


def gram_on(V: QuadraticSpace, basis) -> list:
    return [[V.pair(x, y) for y in basis] for x in basis]


def eigen_split(A: IsometryMap) -> EigenSplit:
    F = A.space.field
    n = A.space.dim
    I = la.identity(n, F)
    Am = la.mpow(la.msub(A.mat, I), n, F)
    Ap = la.mpow(la.madd(A.mat, I), n, F)
    v_plus = la.nullspace(Am, F, n)
    v_minus = la.nullspace(Ap, F, n)
    w = la.column_space(la.matmul(Am, Ap, F), F)
    return EigenSplit(v_plus, v_minus, w)


def _check_spinor_pre(A: IsometryMap):
    if not A.special:
        raise NotSpecialOrthogonal("det(A) != 1")
    if not discriminant(A.space).is_trivial:
        raise NonSquareDiscriminant("the space does not have square discriminant")


def _peel(coeffs, root, F):
    """Divide out (x - root) as often as possible; return (multiplicity, quotient)."""
    k = 0
    while len(coeffs) > 1 and not la.poly_eval(coeffs, root, F):
        # synthetic division, coefficients low degree first
        n = len(coeffs) - 1
        q = [F.zero] * n
        acc = F.zero
        for i in range(n, 0, -1):
            acc = acc * root + coeffs[i]
            q[i - 1] = acc
        coeffs = q
        k += 1
    return k, coeffs


def split_charpoly(A: IsometryMap):
    """(h, m, r) with det(xI - A) = (x-1)^h (x+1)^m r(x) and r(1) r(-1) != 0."""
    F = A.space.field
    cp = la.charpoly(A.mat, F)
    h, rest = _peel(cp, F.one, F)
    m, r = _peel(rest, -F.one, F)
    return h, m, r


def spinor_norm(A: IsometryMap) -> SquareClass:
    """det(1 - A | W) * disc(V+).

    det(1 - A | W) is r(1) for the factor r of the characteristic polynomial
    prime to x^2 - 1, so only V+ needs an explicit basis.
    """
    _check_spinor_pre(A)
    F = A.space.field
    h, _, r = split_charpoly(A)
    out = sq_classify(la.poly_eval(r, F.one, F), F)
    if h:
        n = A.space.dim
        vp = la.nullspace(la.mpow(la.msub(A.mat, la.identity(n, F)), h, F), F, n)
        out = sq_mul(out, discriminant((F, gram_on(A.space, vp))))
    return out


def spinor_norm_via_split(A: IsometryMap) -> SquareClass:
    """Same formula evaluated on the explicit eigen_split subspaces."""
    _check_spinor_pre(A)
    F = A.space.field
    sp = eigen_split(A)
    out = trivial(F)
    if sp.w:
        n = A.space.dim
        one_minus = la.msub(la.identity(n, F), A.mat)
        out = sq_classify(la.det(la.restrict(one_minus, sp.w, F), F), F)
    if sp.v_plus:
        out = sq_mul(out, discriminant((F, gram_on(A.space, sp.v_plus))))
    return out


def det_one_minus(A: IsometryMap) -> SquareClass:
    _check_spinor_pre(A)
    F = A.space.field
    d = la.det(la.msub(la.identity(A.space.dim, F), A.mat), F)
    if not d:
        raise SingularOneMinus("1 is an eigenvalue of A")
    return sq_classify(d, F)


def one_minus_tA(A) -> list:
    """Coefficients (low degree first) of det(1 - tA)."""
    mat = A.mat if isinstance(A, IsometryMap) else A
    F = A.space.field if isinstance(A, IsometryMap) else None
    cp = la.charpoly(mat, F)
    return list(reversed(cp))


def taylor_at_one(coeffs, F) -> list:
    """Coefficients of p(1 + s) in s."""
    n = len(coeffs)
    out = [F.zero] * n
    for k, c in enumerate(coeffs):
        if c:
            for j in range(k + 1):
                out[j] = out[j] + c * comb(k, j)
    return out


def l_star_leading(A: IsometryMap):
    """(h, leading Taylor coefficient of det(1 - tA) at t = 1, disc of the generalised fixed space).

    The h-th derivative at t = 1 divided by h! is the s^h coefficient of
    det(1 - (1+s)A).
    """
    F = A.space.field
    tay = taylor_at_one(one_minus_tA(A), F)
    h = next(k for k, c in enumerate(tay) if c)
    sp = eigen_split(A)
    if len(sp.v_plus) != h:
        raise AssertionError("vanishing order differs from dim of generalised fixed space")
    d = la.det(gram_on(A.space, sp.v_plus), F) if sp.v_plus else F.one
    return h, tay[h], d


def l_star(A: IsometryMap) -> SquareClass:
    """Spinor norm, checked against the leading-coefficient formulation."""
    sn = spinor_norm(A)
    F = A.space.field
    _, lead, d = l_star_leading(A)
    other = sq_classify(lead / d, F)
    if other != sn:
        raise AssertionError(f"leading-coefficient form {other} != spinor norm {sn}")
    return sn


# ---------------------------------------------------------------- reflections

def reflection(V: QuadraticSpace, v) -> IsometryMap:
    """r_v(x) = x - 2 <x,v>/<v,v> v."""
    F = V.field
    q = V.pair(v, v)
    if not q:
        raise OrthError("cannot reflect in an isotropic vector")
    Gv = la.matvec(V.gram, v, F)
    c = F(2) / q
    n = V.dim
    M = [[(F.one if i == j else F.zero) - c * v[i] * Gv[j] for j in range(n)] for i in range(n)]
    return IsometryMap.trusted(V, M)


def _primitive(v, F):
    """Rescale a rational vector to a primitive integer one (same reflection, same class)."""
    from fractions import Fraction
    from math import gcd, lcm
    if F.char or not all(isinstance(x, Fraction) for x in v):
        return v
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for k in ints:
        g = gcd(g, k)
    return [Fraction(k // g) for k in ints] if g else v


def _anisotropic_in(V: QuadraticSpace, basis):
    for b in basis:
        if V.pair(b, b):
            return b
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = [x + y for x, y in zip(basis[i], basis[j])]
            if V.pair(s, s):
                return s
    raise Degenerate("no anisotropic vector in a nondegenerate subspace")


def cartan_dieudonne(A: IsometryMap) -> list:
    """Vectors y_1..y_m with A = r_{y_1} ... r_{y_m}."""
    V = A.space
    F = V.field
    n = V.dim
    B = A.mat
    refls = []
    fixed = []
    while len(fixed) < n:
        if fixed:
            rows = [la.matvec(V.gram, x, F) for x in fixed]
            W = la.nullspace(rows, F, n)
        else:
            W = la.identity(n, F)
        x = _primitive(_anisotropic_in(V, W), F)
        Bx = la.matvec(B, x, F)
        y = _primitive([a - b for a, b in zip(Bx, x)], F)
        if any(y):
            if V.pair(y, y):
                B = la.matmul(reflection(V, y).mat, B, F)
                refls.append(y)
            else:
                z = _primitive([a + b for a, b in zip(Bx, x)], F)
                B = la.matmul(reflection(V, z).mat, B, F)
                B = la.matmul(reflection(V, x).mat, B, F)
                refls.extend([z, x])
        fixed.append(x)
    assert la.equal(B, la.identity(n, F))
    return refls


def spinor_norm_by_reflections(A: IsometryMap) -> SquareClass:
    V = A.space
    return sq_prod((sq_classify(V.pair(y, y), V.field) for y in cartan_dieudonne(A)), V.field)


# ---------------------------------------------------------------- random data

def random_square_disc_space(F, n: int, rng: random.Random, congruence: bool = True) -> QuadraticSpace:
    """Random nondegenerate n-dim space whose discriminant is a square."""
    diag = [F.random(rng, nonzero=True) for _ in range(n - 1)]
    last = F.one
    for d in diag:
        last = last * d
    diag.append(last)
    G = [[diag[i] if i == j else F.zero for j in range(n)] for i in range(n)]
    if congruence:
        while True:
            P = [[F.random(rng) for _ in range(n)] for _ in range(n)]
            if la.det(P, F):
                break
        G = la.matmul(la.matmul(la.transpose(P), G, F), P, F)
    return QuadraticSpace(F, G)


def random_anisotropic(V: QuadraticSpace, rng: random.Random):
    while True:
        v = [V.field.random(rng) for _ in range(V.dim)]
        if V.pair(v, v):
            return v


def random_special_orthogonal(V: QuadraticSpace, rng: random.Random, pairs: int | None = None) -> IsometryMap:
    """Product of an even number of random reflections."""
    F = V.field
    k = pairs if pairs is not None else rng.randint(1, max(1, V.dim))
    M = la.identity(V.dim, F)
    for _ in range(2 * k):
        M = la.matmul(M, reflection(V, random_anisotropic(V, rng)).mat, F)
    return IsometryMap(V, M)


def hyperbolic(F, k: int) -> QuadraticSpace:
    """Orthogonal sum of k hyperbolic planes."""
    n = 2 * k
    G = [[F.zero] * n for _ in range(n)]
    for i in range(k):
        G[2 * i][2 * i + 1] = F.one
        G[2 * i + 1][2 * i] = F.one
    return QuadraticSpace(F, G)
