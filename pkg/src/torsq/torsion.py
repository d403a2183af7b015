"""Torsion square classes of genus-2 mapping tori and of the circle.

A cocycle phi: pi_1(S) -> V is recorded by (phi(b1), phi(a2), phi(b2)); the
value phi(a1) is forced by the surface relator once 1 - rho(a1 b1 a1^-1) is
invertible.  The monodromy T~ acts on these coordinates by
phi -> M^-1 o phi o t, and det(1 - T) on H^1 is det(1 - T~) / det(1 - M^-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .orth import IsometryMap, _peel, spinor_norm
from .squareclass import SquareClass, sq_classify, sq_mul, sq_of_sign
from .surface import (A1, A2, B1, B2, GENS, RELATOR, TwistedSystem,
                      apply_twist_word, eval_rep, parse_word)


class TorsionError(ValueError):
    pass


class DegenerateB1(TorsionError):
    pass


class UnknownGram(TorsionError):
    pass


COORD_GENS = (B1, A2, B2)


def fox_matrices(rho, w) -> dict:
    """C_g with phi(w) = sum_g C_g phi(g) for every cocycle phi.

    Uses phi(gh) = g phi(h) + phi(g) and phi(g^-1) = -g^-1 phi(g).
    """
    F = rho.field
    n = rho.size
    out = {g: la.zeros(n, n, F) for g in GENS}
    prefix = la.identity(n, F)
    for x in w:
        g = abs(x)
        if x > 0:
            out[g] = la.madd(out[g], prefix)
            prefix = la.matmul(prefix, rho[g], F)
        else:
            prefix = la.matmul(prefix, la.inverse(rho[g], F), F)
            out[g] = la.msub(out[g], prefix)
    return out


def relator_coefficients(rho) -> dict:
    return fox_matrices(rho, RELATOR)


@dataclass
class CocycleOperator:
    tmat: list            # 6r x 6r, acting on column coordinate vectors
    mconj: list
    field: object
    solve_a1: list        # 2r x 6r: phi(a1) in terms of the coordinates

    def transpose(self):
        return la.transpose(self.tmat)


def _a1_solver(rho):
    """Matrix X with phi(a1) = X (phi(b1); phi(a2); phi(b2))."""
    F = rho.field
    C = relator_coefficients(rho)
    Ca1 = C[A1]
    if not la.det(Ca1, F):
        raise DegenerateB1("1 - rho(a1 b1 a1^-1) is singular")
    rhs = [list(a) + list(b) + list(c) for a, b, c in zip(C[B1], C[A2], C[B2])]
    return la.solve_matrix(Ca1, la.mneg(rhs), F)


def cocycle_operator(sys: TwistedSystem) -> CocycleOperator:
    rho = sys.rep
    F = rho.field
    n = rho.size
    X = _a1_solver(rho)
    Minv = la.inverse(sys.conj, F)
    # phi(g) for every generator as a 2r x 6r matrix of the coordinates
    ident = la.identity(3 * n, F)
    phi = {A1: X}
    for k, g in enumerate(COORD_GENS):
        phi[g] = ident[k * n:(k + 1) * n]
    rows = []
    for g in COORD_GENS:
        C = fox_matrices(rho, apply_twist_word(sys.twist, (g,), sys.order))
        acc = la.zeros(n, 3 * n, F)
        for h in GENS:
            acc = la.madd(acc, la.matmul(C[h], phi[h], F))
        rows.extend(la.matmul(Minv, acc, F))
    return CocycleOperator(rows, sys.conj, F, X)


def iota_matrix(rho):
    F = rho.field
    n = rho.size
    I = la.identity(n, F)
    out = []
    for g in COORD_GENS:
        out.extend(la.msub(rho[g], I))
    return out


def check_commuting_square(sys: TwistedSystem, op: CocycleOperator | None = None) -> bool:
    op = op or cocycle_operator(sys)
    F = sys.field
    iota = iota_matrix(sys.rep)
    Minv = la.inverse(sys.conj, F)
    return la.equal(la.matmul(op.tmat, iota, F), la.matmul(iota, Minv, F))


def _complement(iota, F):
    """Columns completing the columns of iota to a basis of V^3."""
    m = len(iota)
    cols = la.transpose(iota)
    basis = la.span_basis(cols, F)
    have = list(basis)
    extra = []
    for j in range(m):
        e = [F.one if i == j else F.zero for i in range(m)]
        if la.rank(have + [e], F) > len(have):
            have.append(e)
            extra.append(e)
    return basis, extra


def h1_matrix(sys: TwistedSystem, op: CocycleOperator | None = None):
    """Matrix of T on H^1 = coker(iota) in a basis of a complement of im(iota)."""
    op = op or cocycle_operator(sys)
    F = sys.field
    iota = iota_matrix(sys.rep)
    img, extra = _complement(iota, F)
    B = la.transpose(img + extra)
    coords = la.solve_matrix(B, la.matmul(op.tmat, la.transpose(extra), F), F)
    k = len(img)
    return [row for row in coords[k:]]


def h1_determinant(sys: TwistedSystem):
    F = sys.field
    T = h1_matrix(sys)
    return la.det(T, F)


@dataclass
class FiberedResult:
    det_one_minus_ttilde: object
    det_one_minus_minv: object
    h: int
    det_prime: object
    sqclass: SquareClass | None
    gram_supplied: bool = False

    def to_json(self):
        F_fmt = (lambda x: None if x is None else str(x))
        return {
            "det_1_minus_Ttilde": F_fmt(self.det_one_minus_ttilde),
            "det_1_minus_Minv": F_fmt(self.det_one_minus_minv),
            "h": self.h,
            "det_prime": F_fmt(self.det_prime),
            "class": None if self.sqclass is None else str(self.sqclass),
            "trivial": None if self.sqclass is None else self.sqclass.is_trivial,
        }


def _split_one(T, F):
    """(h, det(1 - T) restricted away from the generalized 1-eigenspace)."""
    h, r = _peel(la.charpoly(T, F), F.one, F)
    # det(xI - T') = r(x), so det(1 - T') = r(1)
    return h, la.poly_eval(r, F.one, F)


def rt_fibered(sys: TwistedSystem, gram=None) -> FiberedResult:
    """(-1)^(h/2) RT(M, rho) as a square class, together with h.

    For h = 0 this is det(1 - T~) / det(1 - M^-1).  Otherwise a Gram matrix
    for the quadratic form on the fixed space of T in H^1 must be supplied
    (in the basis returned by ``fixed_space``); without it only h and the
    determinant away from 1 are reported.
    """
    F = sys.field
    op = cocycle_operator(sys)
    n = len(op.tmat)
    I6 = la.identity(n, F)
    dT = la.det(la.msub(I6, op.tmat), F)
    Minv = la.inverse(sys.conj, F)
    dM = la.det(la.msub(la.identity(len(Minv), F), Minv), F)
    T = h1_matrix(sys, op)
    h, dprime = _split_one(T, F)
    if h == 0:
        d = dT / dM if dM else la.det(la.msub(la.identity(len(T), F), T), F)
        return FiberedResult(dT, dM, 0, d, sq_classify(d, F))
    if gram is None:
        return FiberedResult(dT, dM, h, dprime, None)
    delta = la.det(la.coerce(gram, F), F)
    return FiberedResult(dT, dM, h, dprime, sq_mul(sq_classify(dprime, F), sq_classify(delta, F)), True)


def fixed_space(sys: TwistedSystem):
    """Basis of the generalized 1-eigenspace of T on H^1 (coordinates in h1_matrix's basis)."""
    F = sys.field
    T = h1_matrix(sys)
    n = len(T)
    N = la.mpow(la.msub(T, la.identity(n, F)), n, F)
    return la.nullspace(N, F, n)


def rt_circle(A: IsometryMap) -> SquareClass:
    """(-1)^(h/2) times the spinor norm, h the dimension of the A-fixed vectors."""
    h = fixed_dim(A)
    return sq_mul(sq_of_sign((-1) ** (h // 2), A.space.field), spinor_norm(A))


def fixed_dim(A: IsometryMap) -> int:
    F = A.space.field
    n = len(A.mat)
    return n - la.rank(la.msub(A.mat, la.identity(n, F)), F)


# the relator condition written out term by term, used as an oracle
COCOND_TERMS = (
    (+1, "", A1), (+1, "a1", B1), (-1, "a1 b1 a1^-1", A1), (-1, "a1 b1 a1^-1 b1^-1", B1),
    (+1, "a1 b1 a1^-1 b1^-1", A2), (+1, "b2 a2 b2^-1", B2), (-1, "b2", A2), (-1, "", B2),
)


def cocond_coefficients(rho) -> dict:
    F = rho.field
    n = rho.size
    out = {g: la.zeros(n, n, F) for g in GENS}
    for s, w, g in COCOND_TERMS:
        M = eval_rep(rho, parse_word(w))
        out[g] = la.madd(out[g], M if s > 0 else la.mneg(M))
    return out
