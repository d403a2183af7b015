"""The genus-2 surface group, five Dehn twists, and 2r x 2r representations.

Words are tuples of nonzero ints: 1, 2, 3, 4 stand for a1, b1, a2, b2 and a
negative entry is the inverse letter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import linalg as la
from .fields import QQi, Gauss

A1, B1, A2, B2 = 1, 2, 3, 4
GENS = (A1, B1, A2, B2)
NAMES = {A1: "a1", B1: "b1", A2: "a2", B2: "b2"}

Word = tuple


class SurfaceError(ValueError):
    pass


class NoConjugator(SurfaceError):
    pass


def reduce_word(w) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(w) -> Word:
    return tuple(-x for x in reversed(w))


def parse_word(s: str) -> Word:
    """"a1 b1 a1^-1" style input."""
    out = []
    for tok in s.split():
        m = re.fullmatch(r"([ab][12])(?:\^(-?\d+))?", tok)
        if not m:
            raise SurfaceError(f"bad letter {tok!r}")
        g = {v: k for k, v in NAMES.items()}[m.group(1)]
        e = int(m.group(2) or 1)
        out.extend([g if e > 0 else -g] * abs(e))
    return reduce_word(out)


def format_word(w) -> str:
    return " ".join(NAMES[abs(x)] + ("^-1" if x < 0 else "") for x in w) or "1"


RELATOR: Word = (A1, B1, -A1, -B1, A2, B2, -A2, -B2)

# images of the moved generators; everything else is fixed
TWISTS: dict[int, dict[int, Word]] = {
    1: {B1: (B1, -A1)},
    2: {A1: (A1, B1)},
    3: {B1: (-A1, -A2, B1), B2: (-A2, -A1, B2)},
    4: {B2: (B2, -A2)},
    5: {A2: (A2, B2)},
}
TWISTS_INV: dict[int, dict[int, Word]] = {
    1: {B1: (B1, A1)},
    2: {A1: (A1, -B1)},
    3: {B1: (A2, A1, B1), B2: (A1, A2, B2)},
    4: {B2: (B2, A2)},
    5: {A2: (A2, -B2)},
}


def apply_automorphism(images: dict[int, Word], w) -> Word:
    out: list[int] = []
    for x in w:
        g = abs(x)
        img = images.get(g, (g,))
        out.extend(img if x > 0 else inverse_word(img))
    return reduce_word(out)


TwistWord = tuple  # of (index, exponent)


def parse_twist(s: str) -> TwistWord:
    """"T4^2 T2 T3 T1" -> ((4, 2), (2, 1), (3, 1), (1, 1))."""
    out = []
    for tok in s.replace("*", " ").split():
        m = re.fullmatch(r"T([1-5])(?:\^\(?(-?\d+)\)?)?", tok)
        if not m:
            raise SurfaceError(f"bad twist token {tok!r}")
        e = int(m.group(2) or 1)
        if e == 0:
            raise SurfaceError("twist exponents must be nonzero")
        out.append((int(m.group(1)), e))
    return tuple(out)


def format_twist(t: TwistWord) -> str:
    return " ".join(f"T{k}" + (f"^{e}" if e != 1 else "") for k, e in t)


def _expand(t: TwistWord) -> list[tuple[int, int]]:
    seq = []
    for k, e in t:
        seq.extend([(k, 1 if e > 0 else -1)] * abs(e))
    return seq


def apply_twist_word(t: TwistWord, w, order: str = "left-first") -> Word:
    """Image of w under the automorphism named by t.

    The default ``order="left-first"`` substitutes the leftmost twist first:
    for t = T4^2 T2 T3 T1 the word g is rewritten by T4, T4, T2, T3 and then
    T1.  This is the reading under which the tabulated genus-2 examples
    close up.  ``"right-first"`` is the other reading.
    """
    seq = _expand(t)
    if order == "right-first":
        seq = seq[::-1]
    elif order != "left-first":
        raise SurfaceError(f"unknown order {order!r}")
    w = reduce_word(w)
    for k, s in seq:
        w = apply_automorphism(TWISTS[k] if s > 0 else TWISTS_INV[k], w)
    return w


# ---------------------------------------------------------------- representations

def standard_J(n: int, F):
    r = n // 2
    J = la.zeros(n, n, F)
    for i in range(r):
        J[i][r + i] = F.one
        J[r + i][i] = -F.one
    return J


def is_symplectic(M, F) -> bool:
    J = standard_J(len(M), F)
    return la.equal(la.matmul(la.matmul(la.transpose(M), J, F), M, F), J)


@dataclass(frozen=True, eq=False)
class SurfaceRep:
    field: object
    images: tuple  # rho(a1), rho(b1), rho(a2), rho(b2)

    def __post_init__(self):
        F = self.field
        imgs = tuple(la.coerce(M, F) for M in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != 4:
            raise SurfaceError("need four generator images")
        n = len(imgs[0])
        if n % 2 or any(la.shape(M) != (n, n) for M in imgs):
            raise SurfaceError("images must be square of one even size")
        for g, M in zip(GENS, imgs):
            if not is_symplectic(M, F):
                raise SurfaceError(f"rho({NAMES[g]}) is not symplectic")
        if not la.equal(eval_rep(self, RELATOR), la.identity(n, F)):
            raise SurfaceError("relator does not map to the identity")

    @property
    def size(self) -> int:
        return len(self.images[0])

    def __getitem__(self, g: int):
        return self.images[g - 1]


def eval_rep(rho: SurfaceRep, w):
    F = rho.field
    n = len(rho.images[0])
    out = la.identity(n, F)
    inv_cache = {}
    for x in w:
        g = abs(x)
        if x > 0:
            M = rho.images[g - 1]
        else:
            if g not in inv_cache:
                inv_cache[g] = la.inverse(rho.images[g - 1], F)
            M = inv_cache[g]
        out = la.matmul(out, M, F)
    return out


def twisted_rep(rho: SurfaceRep, t: TwistWord, order: str = "left-first") -> SurfaceRep:
    return SurfaceRep(rho.field, tuple(eval_rep(rho, apply_twist_word(t, (g,), order)) for g in GENS))


def field_sqrt(x, F):
    """A square root of x in F, or None."""
    from fractions import Fraction
    from math import isqrt
    x = F(x)
    if not x:
        return F.zero
    if F.char:
        if not F.is_square(x):
            return None
        for y in (F.elements() if hasattr(F, "elements") else []):
            if y * y == x:
                return y
        return None
    if isinstance(x, Fraction):
        n, d = x.numerator, x.denominator
        if n < 0:
            return None
        rn, rd = isqrt(n), isqrt(d)
        return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None
    # Q(i): (u + v i)^2 = a + b i
    a, b = x.re, x.im
    nrm = field_sqrt(a * a + b * b, _Q())
    if nrm is None:
        return None
    for s in (1, -1):
        u2 = (a + s * nrm) / 2
        u = field_sqrt(u2, _Q())
        if u is None:
            continue
        if u == 0:
            v = field_sqrt(-a, _Q())
            if v is not None and v * v == -a and not b:
                return Gauss(0, v)
            continue
        v = b / (2 * u)
        if u * u - v * v == a:
            return Gauss(u, v)
    return None


def _Q():
    from .fields import QQ
    return QQ


def _first_nonzero(M):
    for row in M:
        for x in row:
            if x:
                return x
    return None


def solve_conjugator(rho: SurfaceRep, rho2: SurfaceRep) -> list:
    """Invertible symplectic M with M rho(g) M^-1 = rho2(g) for all generators.

    The solution space of M rho(g) = rho2(g) M is computed exactly.  When it is
    one-dimensional (rho irreducible) the solutions are scaled to be
    symplectic and both signs are returned.
    """
    F = rho.field
    n = rho.size
    # unknown M flattened row-major; equation entries (M A - B M)_{ij}
    rows = []
    for g in GENS:
        A, B = rho[g], rho2[g]
        for i in range(n):
            for j in range(n):
                row = [F.zero] * (n * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + A[k][j]
                    row[k * n + j] = row[k * n + j] - B[i][k]
                rows.append(row)
    basis = la.nullspace(rows, F, n * n)
    mats = [[v[i * n:(i + 1) * n] for i in range(n)] for v in basis]
    J = standard_J(n, F)
    out = []
    for M in mats:
        if not la.det(M, F):
            continue
        G = la.matmul(la.matmul(la.transpose(M), J, F), M, F)
        lam = G[0][n // 2]
        if not la.equal(G, la.mscale(J, lam)):
            continue
        root = field_sqrt(lam, F)
        if root is None:
            continue
        Ms = la.mscale(M, F.one / root)
        out.extend([Ms, la.mneg(Ms)])
    if not out:
        raise NoConjugator("no invertible symplectic intertwiner")
    return out


@dataclass(frozen=True, eq=False)
class TwistedSystem:
    rep: SurfaceRep
    twist: TwistWord
    conj: list
    order: str = "left-first"

    def __post_init__(self):
        F = self.rep.field
        M = la.coerce(self.conj, F)
        object.__setattr__(self, "conj", M)
        if not is_symplectic(M, F):
            raise SurfaceError("conjugator is not symplectic")
        Minv = la.inverse(M, F)
        tw = twisted_rep(self.rep, self.twist, self.order)
        for g in GENS:
            if not la.equal(tw[g], la.matmul(la.matmul(M, self.rep[g], F), Minv, F)):
                raise SurfaceError(f"rho(t({NAMES[g]})) != M rho({NAMES[g]}) M^-1")

    @property
    def field(self):
        return self.rep.field

    def twisted(self) -> SurfaceRep:
        return twisted_rep(self.rep, self.twist, self.order)


# ---------------------------------------------------------------- quaternions

def quaternion_matrix(a, b, c, d):
    """a + b i + c j + d k  ->  [[a + b i, c + d i], [-c + d i, a - b i]] over Q(i)."""
    a, b, c, d = (QQi(x) for x in (a, b, c, d))
    I = Gauss(0, 1)
    return [[a + b * I, c + d * I], [-c + d * I, a - b * I]]


def binary_tetrahedral() -> list:
    """The 24 units of the Hurwitz order as 2x2 matrices over Q(i)."""
    from fractions import Fraction
    from itertools import product
    quats = []
    for k in range(4):
        for s in (1, -1):
            q = [0, 0, 0, 0]
            q[k] = s
            quats.append(tuple(q))
    h = Fraction(1, 2)
    for signs in product((1, -1), repeat=4):
        quats.append(tuple(h * s for s in signs))
    return [quaternion_matrix(*q) for q in quats]
