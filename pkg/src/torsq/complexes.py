"""Based cochain complexes with epsilon-symmetric pairings.

Conventions (fixed once, every sign-sensitive routine is written against them):

* differentials raise degree; ``d[q]`` is the matrix of C_q -> C_{q+1}
  acting on column vectors;
* a pairing of dimension n is a dict p -> T_{p,n-p} with
  T(x, y) = x^t T_{p,n-p} y, required to satisfy
  T_{p,q} = eps (-1)^{pq} T_{q,p}^t and
  T(dx, y) + (-1)^{|x|} T(x, dy) = 0;
* the dual complex has (C^v)_{-q} = C_q^* with differential (-1)^{q+1} d^*
  in degree q, and C[m] has (C[m])_q = C_{q+m} with differential (-1)^m d;
* the cone of f: C -> D is D_q + C_{q+1} with (u, x) -> (du + f x, -dx);
* volumes of strongly even complexes are compared term by term, and the
  duality of determinant lines is the reversed one
  v_1 ^ ... ^ v_n -> (v_n^* ^ ... ^ v_1^*)^{-1}, which costs (-1)^{m(m-1)/2}
  on an m-dimensional Lagrangian.

Volume classes are returned as square classes of the ratio to the volume
of the distinguished (standard) bases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .squareclass import SquareClass, sq_classify, sq_mul, sq_of_sign, trivial


class ComplexError(ValueError):
    pass


class NotAComplex(ComplexError):
    pass


class NotClosed(ComplexError):
    pass


class NotPoincare(ComplexError):
    pass


class NotStrict(ComplexError):
    pass


class NotLagrangian(ComplexError):
    pass


class PreconditionViolated(ComplexError):
    pass


# ---------------------------------------------------------------- complexes

@dataclass
class BasedComplex:
    field: object
    lo: int
    dims: list                      # dims[i] = dim C_{lo+i}
    diffs: dict = dc_field(default_factory=dict)   # q -> matrix C_q -> C_{q+1}

    def __post_init__(self):
        F = self.field
        self.dims = list(self.dims)
        full = {}
        for q in range(self.lo, self.hi):
            M = self.diffs.get(q)
            if M is None:
                M = la.zeros(self.dim(q + 1), self.dim(q), F)
            M = la.coerce(M, F) if M else [[] for _ in range(self.dim(q + 1))]
            if la.shape(M) != (self.dim(q + 1), self.dim(q)) and self.dim(q) and self.dim(q + 1):
                raise NotAComplex(f"d_{q} has shape {la.shape(M)}")
            full[q] = M
        self.diffs = full
        for q in range(self.lo, self.hi - 1):
            if self.dim(q) and self.dim(q + 2):
                if not la.is_zero(la.matmul(self.d(q + 1), self.d(q), F)):
                    raise NotAComplex(f"d_{q + 1} d_{q} != 0")

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    @property
    def degrees(self):
        return range(self.lo, self.hi + 1)

    def dim(self, q: int) -> int:
        if q < self.lo or q > self.hi:
            return 0
        return self.dims[q - self.lo]

    def d(self, q: int):
        """Matrix of C_q -> C_{q+1} (possibly with zero rows or columns)."""
        F = self.field
        if q in self.diffs and self.dim(q) and self.dim(q + 1):
            return self.diffs[q]
        return la.zeros(self.dim(q + 1), self.dim(q), F)

    def rank_d(self, q: int) -> int:
        if not self.dim(q) or not self.dim(q + 1):
            return 0
        return la.rank(self.d(q), self.field)

    def h_dim(self, q: int) -> int:
        return self.dim(q) - self.rank_d(q) - self.rank_d(q - 1)

    def euler(self) -> int:
        return sum((-1) ** q * self.dim(q) for q in self.degrees)

    def is_strongly_even(self) -> bool:
        return all(d % 2 == 0 for d in self.dims)

    def is_acyclic(self) -> bool:
        return all(self.h_dim(q) == 0 for q in self.degrees)


def zero_complex(F) -> BasedComplex:
    return BasedComplex(F, 0, [0])


def shift(C: BasedComplex, m: int) -> BasedComplex:
    """C[m]: degree q holds C_{q+m}, differential (-1)^m d."""
    s = (-1) ** (m % 2)
    diffs = {q - m: la.mscale(C.d(q), C.field.one * s) for q in range(C.lo, C.hi)}
    return BasedComplex(C.field, C.lo - m, C.dims, diffs)


def dual(C: BasedComplex) -> BasedComplex:
    """C^v in the dual bases: degree q holds C_{-q}^*, differential (-1)^{q+1} d_{-q-1}^t."""
    F = C.field
    lo = -C.hi
    dims = [C.dim(-q) for q in range(lo, -C.lo + 1)]
    diffs = {}
    for q in range(lo, -C.lo):
        diffs[q] = la.mscale(la.transpose(C.d(-q - 1)), F.one * (-1) ** ((q + 1) % 2))
    return BasedComplex(F, lo, dims, diffs)


def cone(f: dict, C: BasedComplex, D: BasedComplex) -> BasedComplex:
    """cone(f: C -> D): degree q holds D_q + C_{q+1}; (u, x) -> (du + f x, -dx)."""
    F = C.field
    lo = min(D.lo, C.lo - 1)
    hi = max(D.hi, C.hi - 1)
    dims = [D.dim(q) + C.dim(q + 1) for q in range(lo, hi + 1)]
    diffs = {}
    for q in range(lo, hi):
        a, b = D.dim(q), C.dim(q + 1)
        a2, b2 = D.dim(q + 1), C.dim(q + 2)
        M = la.zeros(a2 + b2, a + b, F)
        dD = D.d(q)
        for i in range(a2):
            for j in range(a):
                M[i][j] = dD[i][j]
        fq = f.get(q + 1)
        if fq is not None:
            for i in range(a2):
                for j in range(b):
                    M[i][a + j] = fq[i][j]
        dC = C.d(q + 1)
        for i in range(b2):
            for j in range(b):
                M[a2 + i][a + j] = -dC[i][j]
        diffs[q] = M
    return BasedComplex(F, lo, dims, diffs)


def is_chain_map(f: dict, C: BasedComplex, D: BasedComplex) -> bool:
    F = C.field
    for q in range(min(C.lo, D.lo) - 1, max(C.hi, D.hi) + 1):
        fq = f.get(q, la.zeros(D.dim(q), C.dim(q), F))
        fq1 = f.get(q + 1, la.zeros(D.dim(q + 1), C.dim(q + 1), F))
        if not C.dim(q) or not D.dim(q + 1):
            continue
        left = la.matmul(fq1, C.d(q), F) if C.dim(q + 1) else la.zeros(D.dim(q + 1), C.dim(q), F)
        right = la.matmul(D.d(q), fq, F) if D.dim(q) else la.zeros(D.dim(q + 1), C.dim(q), F)
        if not la.equal(left, right):
            return False
    return True


# ---------------------------------------------------------------- symmetric complexes

@dataclass
class SymmetricComplex:
    base: BasedComplex
    n: int
    eps: int
    pairing: dict          # p -> T_{p, n-p}

    def __post_init__(self):
        F = self.base.field
        C = self.base
        T = {}
        for p in C.degrees:
            q = self.n - p
            if C.dim(p) and C.dim(q):
                M = self.pairing.get(p)
                T[p] = la.coerce(M, F) if M is not None else la.zeros(C.dim(p), C.dim(q), F)
        self.pairing = T
        check_closed(self)

    @property
    def field(self):
        return self.base.field

    def T(self, p: int):
        C = self.base
        if p in self.pairing:
            return self.pairing[p]
        return la.zeros(C.dim(p), C.dim(self.n - p), C.field)


def check_closed(S: SymmetricComplex) -> None:
    C, F, n, eps = S.base, S.base.field, S.n, S.eps
    for p in C.degrees:
        q = n - p
        if not (C.dim(p) and C.dim(q)):
            continue
        if not la.equal(S.T(p), la.mscale(la.transpose(S.T(q)), F.one * eps * (-1) ** ((p * q) % 2))):
            raise NotClosed(f"T_{p},{q} is not eps-symmetric")
    # T(d x_{p-1}, y_q) + (-1)^{p-1} T(x_{p-1}, d y_q) = 0 for p + q = n
    for p in range(C.lo + 1, C.hi + 1):
        q = n - p
        if not (C.dim(p - 1) and C.dim(q)):
            continue
        left = la.matmul(la.transpose(C.d(p - 1)), S.T(p), F) if C.dim(p) else None
        right = la.matmul(S.T(p - 1), C.d(q), F) if C.dim(q + 1) else None
        tot = la.zeros(C.dim(p - 1), C.dim(q), F)
        if left is not None:
            tot = la.madd(tot, left)
        if right is not None:
            tot = la.madd(tot, la.mscale(right, F.one * (-1) ** ((p - 1) % 2)))
        if not la.is_zero(tot):
            raise NotClosed(f"pairing not closed at ({p - 1}, {q})")


def duality_map(S: SymmetricComplex):
    """f: C -> C^v[-n] with <f(x_p), y> = T(x_p, y); returns (dict p -> matrix, target, strict)."""
    C, F, n = S.base, S.field, S.n
    target = shift(dual(C), -n)
    f = {}
    strict = True
    for p in C.degrees:
        q = n - p
        if C.dim(p) or C.dim(q):
            f[p] = la.transpose(S.T(p)) if (C.dim(p) and C.dim(q)) else la.zeros(C.dim(q), C.dim(p), F)
            if C.dim(p) != C.dim(q) or (C.dim(p) and not la.det(f[p], F)):
                strict = False
    for q in target.degrees:
        if target.dim(q) and not C.dim(q):
            strict = False
    if not is_chain_map(f, C, target):
        raise NotClosed("duality map is not a chain map")
    return f, target, strict


def is_strict(S: SymmetricComplex) -> bool:
    return duality_map(S)[2]


def is_poincare(S: SymmetricComplex) -> bool:
    f, target, _ = duality_map(S)
    D = cone(f, S.base, target)
    return D.is_acyclic()


def boundary_cone(S: SymmetricComplex) -> SymmetricComplex:
    """cone(f) with its strict pairing of dimension n - 1.

    Degree q of the cone is C^*_{n-q} + C_{q+1}; the pairing of (phi, x) in
    degree p with (psi, y) in degree n-1-p is
    (-1)^p phi(y) + eps (-1)^{(n+1)(p+1)} psi(x).  Up to an overall sign these
    are the only signs making it closed and eps-symmetric, and f does not
    enter.
    """
    C, F, n, eps = S.base, S.field, S.n, S.eps
    f, target, _ = duality_map(S)
    D = cone(f, C, target)
    m = n - 1
    T = {}
    for p in D.degrees:
        q = m - p
        if not (D.dim(p) and D.dim(q)):
            continue
        a, b = target.dim(p), C.dim(p + 1)          # phi in C^*_{n-p}, x in C_{p+1}
        a2, b2 = target.dim(q), C.dim(q + 1)        # psi in C^*_{n-q}, y in C_{q+1}
        M = la.zeros(a + b, a2 + b2, F)
        s1, s2 = _cone_signs(p, n, eps)
        # phi(y): phi lives in C^*_{n-p} = C^*_{q+1}, y in C_{q+1}
        for i in range(a):
            M[i][a2 + i] = F.one * s1
        # psi(x): psi in C^*_{n-q} = C^*_{p+1}, x in C_{p+1}
        for j in range(b):
            M[a + j][j] = F.one * s2
        T[p] = M
    return SymmetricComplex(D, m, eps, T)


def _cone_signs(p: int, n: int, eps: int):
    """Coefficients of phi(y) and psi(x) in the cone pairing (phi, x).(psi, y), |(phi,x)| = p."""
    return (-1) ** (p % 2), eps * (-1) ** (((n + 1) * (p + 1)) % 2)


# ---------------------------------------------------------------- cohomology helpers

def _complement_basis(sub, n, F):
    """Standard basis vectors completing the columns ``sub`` to a basis of F^n."""
    have = [list(v) for v in sub]
    r = la.rank(have, F) if have else 0
    extra = []
    for j in range(n):
        e = [F.one if i == j else F.zero for i in range(n)]
        if la.rank(have + [e], F) > r:
            have.append(e)
            extra.append(e)
            r += 1
        if r == n:
            break
    return extra


def cycles(C: BasedComplex, q: int):
    F = C.field
    if not C.dim(q):
        return []
    if not C.dim(q + 1):
        return [[F.one if i == j else F.zero for i in range(C.dim(q))] for j in range(C.dim(q))]
    return la.nullspace(C.d(q), F, C.dim(q))


def boundaries(C: BasedComplex, q: int):
    if not C.dim(q) or not C.dim(q - 1):
        return []
    return la.column_space(C.d(q - 1), C.field)


def semicharacteristic(C: BasedComplex, mid) -> int:
    """sum_{j < mid} (-1)^j dim H^j, reduced mod 2."""
    return semichar_value(C, mid) % 2


def semichar_value(C: BasedComplex, mid) -> int:
    return sum((-1) ** (j % 2) * C.h_dim(j) for j in C.degrees if j < mid)


# ---------------------------------------------------------------- volumes

def _det_cols(cols, F):
    return la.det(la.transpose(cols), F)


def lagvec_factor(F, gram, lag, ambient_dim):
    """Square-class factor of the Lagrangian volume of L in (W, gram) relative to the standard basis.

    With l a basis of L, u a complement and P = (gram(u_a, l_b)), the volume is
    (-1)^{m(m-1)/2} det[l, u] / det P.
    """
    m = len(lag)
    if 2 * m != ambient_dim:
        raise NotLagrangian("Lagrangian must have half the dimension")
    for x in lag:
        for y in lag:
            if _form(gram, x, y, F):
                raise NotLagrangian("subspace is not isotropic")
    if m == 0:
        return F.one
    u = _complement_basis(lag, ambient_dim, F)
    P = [[_form(gram, ua, lb, F) for lb in lag] for ua in u]
    dP = la.det(P, F)
    if not dP:
        raise NotLagrangian("pairing with the complement is degenerate")
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return F.one * sign * _det_cols(lag + u, F) * dP


def _form(G, x, y, F):
    return sum((x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and G[i][j] and y[j]), F.zero)


def _pair_gram(S: SymmetricComplex, j: int):
    """Gram matrix on C_j + C_{n-j} of (x, x').(y, y') = T(x, y') + T(x', y)."""
    C, F, n = S.base, S.field, S.n
    a, b = C.dim(j), C.dim(n - j)
    G = la.zeros(a + b, a + b, F)
    T1 = S.T(j) if a and b else None
    T2 = S.T(n - j) if a and b else None
    for i in range(a):
        for k in range(b):
            G[i][a + k] = T1[i][k]
    for i in range(b):
        for k in range(a):
            G[a + i][k] = T2[i][k]
    return G


def _check_lagrangian_subcomplex(S: SymmetricComplex, L: dict):
    C, F = S.base, S.field
    for q in C.degrees:
        Lq = L.get(q, [])
        if not Lq or not C.dim(q + 1):
            continue
        img = [la.matvec(C.d(q), v, F) for v in Lq]
        tgt = L.get(q + 1, [])
        if la.rank(tgt + img, F) != la.rank(tgt, F) if tgt else any(any(x for x in v) for v in img):
            raise NotLagrangian(f"L is not a subcomplex at degree {q}")


def lagrangian_volume(S: SymmetricComplex, L: dict) -> SquareClass:
    """Square class of nu_L / e for a strongly even Lagrangian L (dict q -> basis columns).

    Computed term by term on the pieces C_j + C_{n-j}, j < n/2.
    """
    C, F, n = S.base, S.field, S.n
    if n % 2 == 0:
        raise PreconditionViolated("Lagrangian volumes need odd dimension")
    if not C.is_strongly_even() or any(len(v) % 2 for v in L.values()):
        raise PreconditionViolated("term-by-term volume needs strongly even C and L")
    _check_lagrangian_subcomplex(S, L)
    out = F.one
    for j in C.degrees:
        k = n - j
        if j >= k:
            continue
        a, b = C.dim(j), C.dim(k)
        if not (a or b):
            continue
        if a != b:
            raise NotStrict(f"dim C_{j} != dim C_{k}")
        G = _pair_gram(S, j)
        lag = [list(v) + [F.zero] * b for v in L.get(j, [])] + \
              [[F.zero] * a + list(v) for v in L.get(k, [])]
        out = out * lagvec_factor(F, G, lag, a + b)
    return sq_classify(out, F)


def upper_half(S: SymmetricComplex) -> dict:
    """The brutal truncation sigma_{>= k} as a Lagrangian, n = 2k - 1."""
    C, F = S.base, S.field
    k = (S.n + 1) // 2
    return {q: la.identity(C.dim(q), F) for q in C.degrees if q >= k and C.dim(q)}


def cohomology_volume(S: SymmetricComplex) -> SquareClass:
    """Square class of nu / e where nu comes from the upper half of cohomology.

    [C] is identified with [H] through bases (d s_{j-1}, h_j, s_j) of C_j;
    this is sign-free once C, the boundaries and the cohomology are all
    strongly even, which is required.
    """
    C, F, n = S.base, S.field, S.n
    if n % 2 == 0:
        raise PreconditionViolated("needs odd dimension")
    if not C.is_strongly_even():
        raise PreconditionViolated("complex is not strongly even")
    s = {}
    B = {}
    h = {}
    for q in C.degrees:
        Z = cycles(C, q)
        if len(Z) % 2 or (C.dim(q) - len(Z)) % 2:
            raise PreconditionViolated(f"cycles or boundaries odd-dimensional in degree {q}")
        s[q] = _complement_basis(Z, C.dim(q), F) if C.dim(q) else []
    for q in C.degrees:
        B[q] = [la.matvec(C.d(q - 1), v, F) for v in s.get(q - 1, [])] if C.dim(q) else []
        Z = cycles(C, q)
        h[q] = _complement_in(B[q], Z, F)
        if len(h[q]) % 2:
            raise PreconditionViolated(f"H^{q} is odd-dimensional")
    out = F.one
    for q in C.degrees:
        if C.dim(q):
            out = out * _det_cols(B[q] + h[q] + s[q], F)
    for j in C.degrees:
        k = n - j
        if j >= k or not h.get(j):
            continue
        P = [[_form(S.T(j), u, l, F) for l in h[k]] for u in h[j]]
        dP = la.det(P, F)
        if not dP:
            raise NotPoincare(f"cohomology pairing degenerate in degrees {j}, {k}")
        m = len(h[j])
        out = out * dP * (-1 if (m * (m - 1) // 2) % 2 else 1)
    return sq_classify(out, F)


def _complement_in(sub, space, F):
    """Vectors from ``space`` completing ``sub`` to a basis of span(space)."""
    have = [list(v) for v in sub]
    r = la.rank(have, F) if have else 0
    out = []
    for v in space:
        if la.rank(have + [v], F) > r:
            have.append(list(v))
            out.append(list(v))
            r += 1
    return out


def rt_chain(S: SymmetricComplex) -> SquareClass:
    """Torsion square class: e (standard bases) against the upper-half cohomology volume."""
    if not is_poincare(S):
        raise NotPoincare("duality map is not a quasi-isomorphism")
    return cohomology_volume(S)


# ---------------------------------------------------------------- the circle

def s1_complex(A) -> SymmetricComplex:
    """V --(1 - A)--> V in degrees 0, 1 with pairing (1/2)<(1 + A^{+-1}) x, y>."""
    from .orth import IsometryMap
    V = A.space
    F, G = V.field, V.gram
    n = V.dim
    I = la.identity(n, F)
    Ainv = la.inverse(A.mat, F)
    half = F.one / 2
    C = BasedComplex(F, 0, [n, n], {0: la.msub(I, A.mat)})
    T01 = la.mscale(la.matmul(la.transpose(la.madd(I, A.mat)), G, F), half)
    T10 = la.mscale(la.matmul(la.transpose(la.madd(I, Ainv)), G, F), half)
    return SymmetricComplex(C, 1, 1, {0: T01, 1: T10})


# ---------------------------------------------------------------- strictify / split

def _projection_to_cohomology(C: BasedComplex, q: int):
    """(reps, P): cohomology representatives and a matrix P with P z = coords of [z]."""
    F = C.field
    Z = cycles(C, q)
    Bq = boundaries(C, q)
    reps = _complement_in(Bq, Z, F)
    basis = Bq + reps
    rest = _complement_basis(basis, C.dim(q), F)
    full = la.transpose(basis + rest)
    inv = la.inverse(full, F) if C.dim(q) else []
    nb = len(Bq)
    P = [inv[nb + i] for i in range(len(reps))]
    return reps, P


def strictify(S: SymmetricComplex):
    """Strict model on cohomology: (H with zero differential and induced pairing, projections).

    The induced pairing is symmetrised as (g + eps (-1)^{pq} g^t) / 2, which
    does not change it on closed input but mirrors the general recipe.
    """
    C, F, n, eps = S.base, S.field, S.n, S.eps
    if not is_poincare(S):
        raise NotPoincare("duality map is not a quasi-isomorphism")
    reps, proj = {}, {}
    for q in C.degrees:
        reps[q], proj[q] = _projection_to_cohomology(C, q) if C.dim(q) else ([], [])
    dims = [len(reps[q]) for q in C.degrees]
    H = BasedComplex(F, C.lo, dims)
    T = {}
    half = F.one / 2
    for p in C.degrees:
        q = n - p
        if reps.get(p) and reps.get(q):
            g = [[_form(S.T(p), x, y, F) for y in reps[q]] for x in reps[p]]
            gt = [[_form(S.T(q), y, x, F) for y in reps[q]] for x in reps[p]]
            s = eps * (-1) ** ((p * q) % 2)
            T[p] = [[half * (a + s * b) for a, b in zip(r1, r2)] for r1, r2 in zip(g, gt)]
    out = SymmetricComplex(H, n, eps, T)
    if not is_strict(out):
        raise NotPoincare("induced pairing on cohomology is degenerate")
    return out, reps, proj


@dataclass
class Splitting:
    Q: BasedComplex          # degrees <= 0
    R: BasedComplex          # E_0 -> B_1 in degrees 0, 1
    basis: dict              # q -> columns: adapted basis of C_q (Q part, R part, Q^v[-1] part)
    parts: dict              # q -> (dim Q, dim R, dim Q^v)


def split_strict(S: SymmetricComplex) -> Splitting:
    """C = Q + Q^v[-1] + R for a strict 1-symmetric complex of dimension 1."""
    C, F = S.base, S.field
    if S.eps != 1 or S.n != 1:
        raise PreconditionViolated("needs a 1-symmetric complex of dimension 1")
    if not is_strict(S):
        raise NotStrict("duality map is not an isomorphism")
    Z0 = cycles(C, 0)
    E0 = _complement_basis(Z0, C.dim(0), F) if C.dim(0) else []
    B1 = [la.matvec(C.d(0), v, F) for v in E0]
    # E_1: annihilator of E_0 in C_1 under T_{0,1}
    if E0 and C.dim(1):
        E1 = la.nullspace([la.matvec(la.transpose(S.T(0)), v, F) for v in E0], F, C.dim(1))
    else:
        E1 = [[F.one if i == j else F.zero for i in range(C.dim(1))] for j in range(C.dim(1))]
    basis, parts = {}, {}
    for q in C.degrees:
        if q < 0:
            basis[q] = la.identity(C.dim(q), F)
            parts[q] = (C.dim(q), 0, 0)
        elif q == 0:
            basis[q] = Z0 + E0
            parts[q] = (len(Z0), len(E0), 0)
        elif q == 1:
            basis[q] = B1 + E1
            parts[q] = (0, len(B1), len(E1))
        else:
            basis[q] = la.identity(C.dim(q), F)
            parts[q] = (0, 0, C.dim(q))
    # Q: C_{<0} -> Z_0
    Qd = [C.dim(q) for q in range(C.lo, 0)] + [len(Z0)]
    Qdiffs = {}
    for q in range(C.lo, 0):
        M = C.d(q)
        if q == -1:
            # express the image in the Z_0 basis
            M = la.solve_matrix(la.transpose(Z0), M, F) if Z0 and C.dim(-1) else la.zeros(len(Z0), C.dim(-1), F)
        Qdiffs[q] = M
    lo = min(C.lo, 0)
    Q = BasedComplex(F, lo, Qd if C.lo <= 0 else [len(Z0)], Qdiffs)
    Rd = la.solve_matrix(la.transpose(B1), [la.matvec(C.d(0), v, F) for v in E0] and la.transpose([la.matvec(C.d(0), v, F) for v in E0]), F) if E0 else []
    R = BasedComplex(F, 0, [len(E0), len(B1)], {0: Rd} if E0 else {})
    for q in C.degrees:
        if C.dim(q) and la.rank(basis[q], F) != C.dim(q):
            raise ComplexError(f"splitting basis degenerate in degree {q}")
    return Splitting(Q, R, basis, parts)


# ---------------------------------------------------------------- (a), (b), (c)

def cone_lagrangian(S: SymmetricComplex, D: SymmetricComplex) -> dict:
    """C^v[-n] inside cone(f): the first summand of every degree."""
    C, F, n = S.base, S.field, S.n
    out = {}
    for q in D.base.degrees:
        a = C.dim(n - q)
        if a:
            out[q] = [[F.one if i == j else F.zero for i in range(D.base.dim(q))] for j in range(a)]
    return out


def _split_boundary_volume(D: SymmetricComplex):
    """(c) through D = A + P, A = E_{k-1} -> B_k acyclic, P = Q + Q^v.

    Returns (square class relative to e, r = dim E_{k-1} / 2).
    """
    C, F, n = D.base, D.field, D.n
    k = (n + 1) // 2
    Z = cycles(C, k - 1)
    E = _complement_basis(Z, C.dim(k - 1), F) if C.dim(k - 1) else []
    Bk = [la.matvec(C.d(k - 1), v, F) for v in E]
    if E:
        Ek = la.nullspace([la.matvec(la.transpose(D.T(k - 1)), v, F) for v in E], F, C.dim(k))
    else:
        Ek = [[F.one if i == j else F.zero for i in range(C.dim(k))] for j in range(C.dim(k))]
    # adapted bases: degree k-1 = (Z, E), degree k = (B, E_k); others standard
    out = F.one
    if C.dim(k - 1):
        out = out * _det_cols(Z + E, F)
    if C.dim(k):
        out = out * _det_cols(Bk + Ek, F)
    # acyclic volume of A in the adapted bases is E (x) (dE)^{-1}: factor 1.
    # P = Q + Q^v with Q = sigma_{>=k} P, volume from that Lagrangian on P
    # written in the adapted bases.
    Pdims = {}
    for q in C.degrees:
        if q == k - 1:
            Pdims[q] = Z
        elif q == k:
            Pdims[q] = Ek
        else:
            Pdims[q] = [[F.one if i == j else F.zero for i in range(C.dim(q))] for j in range(C.dim(q))]
    for j in C.degrees:
        kk = n - j
        if j >= kk:
            continue
        bj, bk = Pdims.get(j, []), Pdims.get(kk, [])
        if not (bj or bk):
            continue
        a, b = len(bj), len(bk)
        if a != b:
            raise NotStrict("P is not self-dual")
        # Gram of P_j + P_kk in the adapted bases
        Tj = D.T(j)
        G = la.zeros(a + b, a + b, F)
        for x in range(a):
            for y in range(b):
                v = _form(Tj, bj[x], bk[y], F)
                G[x][a + y] = v
                G[a + y][x] = _form(D.T(kk), bk[y], bj[x], F)
        lag = [[F.zero] * a + [F.one if i == y else F.zero for i in range(b)] for y in range(b)]
        out = out * lagvec_factor(F, G, lag, a + b)
    return sq_classify(out, F), len(E) // 2


@dataclass
class ABCReport:
    a: SquareClass
    b: SquareClass
    c: SquareClass
    c_direct: SquareClass | None
    r: int
    r_split: int
    chi_C: int
    chi_half_D: int
    ok: bool

    def to_json(self):
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c),
                "c_direct": None if self.c_direct is None else str(self.c_direct),
                "r": self.r, "r_split": self.r_split, "chi_C": self.chi_C,
                "chi_half_D": self.chi_half_D, "ok": self.ok}


def verify_abc(S: SymmetricComplex) -> ABCReport:
    """(a) = (b) = (-1)^r (c) on D = boundary_cone(S), r = (chi(C) + chi_{1/2}(D)) / 2."""
    C, F, n = S.base, S.field, S.n
    if S.eps != -1 or n % 4 or not C.is_strongly_even():
        raise PreconditionViolated("needs a strongly even skew complex of dimension 0 mod 4")
    D = boundary_cone(S)
    if not is_strict(D):
        raise NotStrict("boundary cone is not strict")
    a = lagrangian_volume(D, cone_lagrangian(S, D))
    b = lagrangian_volume(D, upper_half(D))
    c, r_split = _split_boundary_volume(D)
    try:
        c_direct = cohomology_volume(D)
    except PreconditionViolated:
        c_direct = None
    chi = C.euler()
    k = n // 2
    chi_half = semichar_value(D.base, k - 0.5)
    num = chi + chi_half
    if num % 2:
        raise ComplexError("chi(C) + chi_1/2(D) is odd")
    r = (num // 2) % 2
    sign = sq_of_sign((-1) ** r, F)
    ok = a == b and b == sq_mul(sign, c) and r == r_split % 2
    if c_direct is not None:
        ok = ok and c_direct == c
    return ABCReport(a, b, c, c_direct, r, r_split, chi, chi_half, ok)


# ---------------------------------------------------------------- theta and cone(id)

def acyclic_volume(C: BasedComplex) -> SquareClass:
    """Square class of the acyclic volume relative to the standard bases (C strongly even, acyclic)."""
    F = C.field
    if not C.is_acyclic():
        raise PreconditionViolated("complex is not acyclic")
    if not C.is_strongly_even():
        raise PreconditionViolated("complex is not strongly even")
    out = F.one
    s = {}
    for q in C.degrees:
        Z = cycles(C, q)
        s[q] = _complement_basis(Z, C.dim(q), F) if C.dim(q) else []
    for q in C.degrees:
        if not C.dim(q):
            continue
        Bq = [la.matvec(C.d(q - 1), v, F) for v in s.get(q - 1, [])]
        out = out * _det_cols(Bq + s[q], F)
    return sq_classify(out, F)


def cone_of_identity(C: BasedComplex) -> BasedComplex:
    F = C.field
    ident = {q: la.identity(C.dim(q), F) for q in C.degrees}
    return cone(ident, C, C)


# ---------------------------------------------------------------- random instances

def random_matrix(F, r, c, rng):
    return [[F.random(rng) for _ in range(c)] for _ in range(r)]


def random_invertible(F, n, rng):
    while True:
        M = random_matrix(F, n, n, rng)
        if n == 0 or la.det(M, F):
            return M


def random_complex(F, lo: int, dims, rng, ranks=None) -> BasedComplex:
    """Random complex with the given dimensions; ranks chosen at random if absent."""
    dims = list(dims)
    L = len(dims)
    if ranks is None:
        ranks = []
        prev = 0
        for i in range(L - 1):
            cap = min(dims[i] - prev, dims[i + 1])
            ranks.append(rng.randint(0, max(cap, 0)))
            prev = ranks[-1]
    # standard model: C_i = B_i + H_i + S_i with d: S_i -> B_{i+1} the identity
    diffs = {}
    blocks = []
    for i in range(L):
        b = ranks[i - 1] if i > 0 else 0
        s = ranks[i] if i < L - 1 else 0
        if b + s > dims[i]:
            raise ComplexError("ranks exceed dimensions")
        blocks.append((b, dims[i] - b - s, s))
    P = [random_invertible(F, d, rng) for d in dims]
    Pinv = [la.inverse(M, F) if M else [] for M in P]
    for i in range(L - 1):
        b0, h0, s0 = blocks[i]
        M = la.zeros(dims[i + 1], dims[i], F)
        for t in range(s0):
            M[t][b0 + h0 + t] = F.one
        if dims[i] and dims[i + 1]:
            M = la.matmul(la.matmul(P[i + 1], M, F), Pinv[i], F)
        diffs[lo + i] = M
    return BasedComplex(F, lo, dims, diffs)


def closed_pairings(C: BasedComplex, n: int, eps: int) -> list:
    """Basis of the space of closed eps-symmetric pairings of dimension n."""
    F = C.field
    # unknowns: T_{p, n-p} for p <= n - p
    idx = {}
    count = 0
    for p in C.degrees:
        q = n - p
        if p <= q and C.dim(p) and C.dim(q):
            for i in range(C.dim(p)):
                for j in range(C.dim(q)):
                    idx[(p, i, j)] = count
                    count += 1
    if not count:
        return []

    def entry(p, i, j):
        """Linear form (dict var -> coeff) for T_{p,n-p}[i][j]."""
        q = n - p
        if p <= q:
            return {idx[(p, i, j)]: F.one}
        s = eps * (-1) ** ((p * q) % 2)
        return {idx[(q, j, i)]: F.one * s}

    rows = []
    if n % 2 == 0 and C.dim(n // 2):
        p = n // 2
        s = eps * (-1) ** ((p * p) % 2)
        for i in range(C.dim(p)):
            for j in range(C.dim(p)):
                row = [F.zero] * count
                row[idx[(p, i, j)]] = row[idx[(p, i, j)]] + F.one
                row[idx[(p, j, i)]] = row[idx[(p, j, i)]] - s
                rows.append(row)
    for p in range(C.lo + 1, C.hi + 1):
        q = n - p
        if not (C.dim(p - 1) and C.dim(q)):
            continue
        dp = C.d(p - 1)   # C_{p-1} -> C_p
        dq = C.d(q)       # C_q -> C_{q+1}
        for i in range(C.dim(p - 1)):
            for j in range(C.dim(q)):
                row = [F.zero] * count
                if C.dim(p):
                    for k in range(C.dim(p)):
                        if dp[k][i]:
                            for v, c in entry(p, k, j).items():
                                row[v] = row[v] + dp[k][i] * c
                if C.dim(q + 1):
                    s = (-1) ** ((p - 1) % 2)
                    for k in range(C.dim(q + 1)):
                        if dq[k][j]:
                            for v, c in entry(p - 1, i, k).items():
                                row[v] = row[v] + dq[k][j] * c * s
                if any(row):
                    rows.append(row)
    basis = la.nullspace(rows, F, count) if rows else [
        [F.one if i == j else F.zero for i in range(count)] for j in range(count)]
    out = []
    for vec in basis:
        T = {}
        for p in C.degrees:
            q = n - p
            if C.dim(p) and C.dim(q):
                T[p] = [[sum((vec[v] * c for v, c in entry(p, i, j).items()), F.zero)
                         for j in range(C.dim(q))] for i in range(C.dim(p))]
        out.append(T)
    return out


def random_closed_pairing(C: BasedComplex, n: int, eps: int, rng, basis=None) -> dict:
    F = C.field
    basis = basis if basis is not None else closed_pairings(C, n, eps)
    T = {}
    for p in C.degrees:
        q = n - p
        if C.dim(p) and C.dim(q):
            T[p] = la.zeros(C.dim(p), C.dim(q), F)
    for B in basis:
        c = F.random(rng)
        for p in T:
            T[p] = la.madd(T[p], la.mscale(B[p], c))
    return T


def random_strongly_even_skew(F, rng, n: int = 4, maxdim: int = 6) -> SymmetricComplex:
    """Random strongly even complex in degrees 0..n with a random closed skew pairing."""
    dims = [2 * rng.randint(0, maxdim // 2) for _ in range(n + 1)]
    C = random_complex(F, 0, dims, rng)
    return SymmetricComplex(C, n, -1, random_closed_pairing(C, n, -1, rng))


def random_strict_symmetric(F, rng, width: int = 2, maxdim: int = 4, tries: int = 40) -> SymmetricComplex:
    """Random strict 1-symmetric complex of dimension 1 in degrees -width+1 .. width."""
    for _ in range(tries):
        lo = 1 - width
        half = [rng.randint(0, maxdim) for _ in range(width)]   # degrees lo..0
        dims = half + half[::-1]
        # ranks mirrored so that C can be self-dual
        L = len(dims)
        ranks = [0] * (L - 1)
        prev = 0
        for i in range(width - 1):
            cap = min(dims[i] - prev, dims[i + 1])
            ranks[i] = rng.randint(0, max(cap, 0))
            prev = ranks[i]
        mid = width - 1
        cap = dims[mid] - (ranks[mid - 1] if mid > 0 else 0)
        ranks[mid] = rng.randint(0, max(cap, 0))
        for i in range(width, L - 1):
            ranks[i] = ranks[L - 2 - i]
        try:
            C = random_complex(F, lo, dims, rng, ranks)
        except ComplexError:
            continue
        basis = closed_pairings(C, 1, 1)
        if not basis:
            continue
        for _ in range(5):
            T = random_closed_pairing(C, 1, 1, rng, basis)
            S = SymmetricComplex(C, 1, 1, T)
            if is_strict(S):
                return S
    raise ComplexError("failed to sample a strict complex")
