"""Hyperelliptic curves y^2 = f(x) over prime fields and their class groups.

Two shapes of model are supported for divisor-class arithmetic:

* ``odd``: deg f = 2g + 1, one rational point at infinity; a degree-0 class
  is [D] - deg(D) * inf with D semi-reduced of degree <= g (unique).
* ``inert``: deg f = 2g + 2 with non-square leading coefficient and g odd;
  infinity is a single place D_inf of degree 2 and a degree-0 class is
  [D] - (deg D / 2) D_inf.  Classes with a representative of degree <= g - 1
  have a unique one; the others have a pencil of q + 1 representatives of
  degree g + 1 and the lexicographically least is kept.

A divisor in Mumford form is a pair (u, v) of coefficient tuples, lowest
degree first, with u monic, deg v < deg u and u | f - v^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd as igcd

from . import polyfp as P


class HyperellError(ValueError):
    pass


class NotSquarefree(HyperellError):
    pass


class BadDegree(HyperellError):
    pass


class Unsupported(HyperellError):
    pass


class TooLarge(HyperellError):
    pass


class CountMismatch(HyperellError):
    pass


Mumford = tuple  # (u, v)
ZERO: Mumford = ((1,), ())


# ---------------------------------------------------------------- curves

@dataclass(frozen=True)
class HyperCurve:
    p: int
    f: tuple

    def __post_init__(self):
        f = tuple(P.norm(list(self.f), self.p))
        object.__setattr__(self, "f", f)
        if self.p % 2 == 0 or self.p < 3:
            raise HyperellError("need an odd prime")
        if len(f) - 1 < 3:
            raise BadDegree("degree must be at least 3")
        if not P.is_squarefree(list(f), self.p):
            raise NotSquarefree("f has a repeated factor")

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @property
    def genus(self) -> int:
        return (self.degree - 1) // 2

    @property
    def lc(self) -> int:
        return self.f[-1]

    @property
    def kind(self) -> str:
        if self.degree % 2:
            return "odd"
        return "inert" if not _is_square_fp(self.lc, self.p) else "split"

    def check_arith(self):
        if self.kind == "odd":
            return
        if self.kind == "inert" and self.genus % 2 == 1:
            return
        raise Unsupported(f"class arithmetic on {self.kind} models of genus {self.genus}")

    def __str__(self):
        return f"y^2 = {format_poly(self.f)} over F_{self.p}"


def curve_new(p: int, f) -> HyperCurve:
    return HyperCurve(p, tuple(f))


def curve_from_form(p: int, form) -> HyperCurve:
    """y^2 = f(x, z) with ``form`` the coefficients of x^n, x^(n-1) z, ..., z^n."""
    return HyperCurve(p, tuple(reversed([c % p for c in form])))


def format_poly(a, var="x") -> str:
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{'*' + mono if mono else ''}")
    return " + ".join(terms) or "0"


def _is_square_fp(a, p) -> bool:
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


# ---------------------------------------------------------------- Cantor arithmetic

def _t(a):
    return tuple(a)


def compose(C: HyperCurve, a: Mumford, b: Mumford) -> Mumford:
    """Cantor composition; the result is semi-reduced, not reduced."""
    p, f = C.p, list(C.f)
    u1, v1 = list(a[0]), list(a[1])
    u2, v2 = list(b[0]), list(b[1])
    d0, e1, e2 = P.xgcd(u1, u2, p)
    d, c1, c2 = P.xgcd(d0, P.add(v1, v2, p), p)
    s1, s2, s3 = P.mul(c1, e1, p), P.mul(c1, e2, p), c2
    u = P.quo(P.mul(u1, u2, p), P.mul(d, d, p), p)
    t = P.add(P.add(P.mul(P.mul(s1, u1, p), v2, p), P.mul(P.mul(s2, u2, p), v1, p), p),
              P.mul(s3, P.add(P.mul(v1, v2, p), f, p), p), p)
    v = P.mod(P.quo(t, d, p), u, p)
    return _t(P.monic(u, p)), _t(v)


def _step(C: HyperCurve, D: Mumford) -> Mumford:
    p = C.p
    u, v = list(D[0]), list(D[1])
    u2 = P.monic(P.quo(P.sub(list(C.f), P.mul(v, v, p), p), u, p), p)
    v2 = P.mod(P.neg(v, p), u2, p)
    return _t(u2), _t(v2)


def _key(D: Mumford):
    u, v = D
    n = len(u) - 1
    vv = list(v) + [0] * (n - len(v))
    return (tuple(reversed(u)), tuple(reversed(vv)))


def _pencil_min(C: HyperCurve, D: Mumford) -> Mumford:
    """Least member of the pencil of degree-(g+1) representatives (inert model)."""
    p = C.p
    u, v = list(D[0]), list(D[1])
    u0 = P.quo(P.sub(list(C.f), P.mul(v, v, p), p), u, p)
    best = D
    bkey = _key(D)
    two_v = P.scale(v, 2, p)
    for lam in range(p):
        ul = P.sub(P.sub(u0, P.scale(two_v, lam, p), p), P.scale(u, lam * lam, p), p)
        ul = P.monic(ul, p)
        w = P.add(v, P.scale(u, lam, p), p)
        vl = P.mod(P.neg(w, p), ul, p)
        cand = (_t(ul), _t(vl))
        k = _key(cand)
        if k < bkey:
            best, bkey = cand, k
    return best


def reduce_divisor(C: HyperCurve, D: Mumford) -> Mumford:
    """Canonical representative of the degree-0 class of a semi-reduced D."""
    C.check_arith()
    g = C.genus
    if C.kind == "odd":
        while len(D[0]) - 1 > g:
            D = _step(C, D)
        return D
    if (len(D[0]) - 1) % 2:
        raise HyperellError("odd-degree divisor on an inert model has no degree-0 class")
    while len(D[0]) - 1 > g + 1:
        D = _step(C, D)
    if len(D[0]) - 1 == g + 1:
        D = _pencil_min(C, D)
    return D


def class_add(C: HyperCurve, a: Mumford, b: Mumford) -> Mumford:
    if a == ZERO:
        return b
    if b == ZERO:
        return a
    return reduce_divisor(C, compose(C, a, b))


def class_neg(C: HyperCurve, a: Mumford) -> Mumford:
    u, v = a
    return reduce_divisor(C, (u, _t(P.neg(list(v), C.p))))


def class_mul(C: HyperCurve, a: Mumford, n: int) -> Mumford:
    if n < 0:
        return class_mul(C, class_neg(C, a), -n)
    out, base = ZERO, a
    while n:
        if n & 1:
            out = class_add(C, out, base)
        base = class_add(C, base, base)
        n >>= 1
    return out


def is_mumford(C: HyperCurve, D: Mumford) -> bool:
    p = C.p
    u, v = list(D[0]), list(D[1])
    if not u or u[-1] != 1 or len(v) >= len(u) and v:
        return False
    return not P.mod(P.sub(list(C.f), P.mul(v, v, p), p), u, p)


@dataclass(frozen=True)
class DivisorClass:
    curve: HyperCurve
    rep: Mumford
    degree: int = 0

    def __add__(self, other):
        return DivisorClass(self.curve, class_add(self.curve, self.rep, other.rep), self.degree + other.degree)

    def __neg__(self):
        return DivisorClass(self.curve, class_neg(self.curve, self.rep), -self.degree)

    def to_json(self):
        return {"u": list(self.rep[0]), "v": list(self.rep[1]), "degree": self.degree}


def class_reduce(C: HyperCurve, D: Mumford) -> DivisorClass:
    return DivisorClass(C, reduce_divisor(C, D))


# ---------------------------------------------------------------- closed points

@dataclass(frozen=True)
class Place:
    degree: int
    u: tuple | None           # None for places at infinity
    v: tuple | None           # None when the place is not a Mumford divisor
    kind: str                 # "split", "ramified", "vertical", "infinity"

    @property
    def mumford(self) -> Mumford | None:
        if self.u is None or self.v is None:
            return None
        return (self.u, self.v)


@lru_cache(maxsize=None)
def _irreducibles(n: int, p: int):
    return tuple(tuple(f) for f in P.irreducibles(n, p))


@lru_cache(maxsize=None)
def places(C: HyperCurve, d: int) -> tuple:
    """All closed points of degree d, in a fixed order."""
    p, f = C.p, list(C.f)
    out = []
    for e in (d, d // 2) if d % 2 == 0 else (d,):
        if e < 1:
            continue
        for m in _irreducibles(e, p):
            m = list(m)
            a = P.mod(f, m, p)
            if e == d:
                if not a:
                    out.append(Place(d, _t(m), (), "ramified"))
                elif P.is_square_mod(a, m, p):
                    r = P.sqrt_mod(a, m, p)
                    r2 = P.mod(P.neg(r, p), m, p)
                    for vv in sorted((_t(r), _t(r2)), key=lambda t: tuple(reversed(t))):
                        out.append(Place(d, _t(m), vv, "split"))
            elif a and not P.is_square_mod(a, m, p):
                out.append(Place(d, _t(m), None, "vertical"))
    out.extend(_infinite_places(C, d))
    return tuple(out)


def _infinite_places(C: HyperCurve, d: int):
    if C.kind == "odd":
        return [Place(1, None, None, "infinity")] if d == 1 else []
    if C.kind == "inert":
        return [Place(2, None, None, "infinity")] if d == 2 else []
    return [Place(1, None, None, "infinity")] * 2 if d == 1 else []


@lru_cache(maxsize=None)
def place_count(C: HyperCurve, d: int) -> int:
    """Number of closed points of degree d (no square roots taken)."""
    p, f = C.p, list(C.f)
    n = len(_infinite_places(C, d))
    for m in _irreducibles(d, p):
        a = P.mod(f, list(m), p)
        n += 1 if not a else (2 if P.is_square_mod(a, list(m), p) else 0)
    if d % 2 == 0:
        for m in _irreducibles(d // 2, p):
            a = P.mod(f, list(m), p)
            n += 1 if a and not P.is_square_mod(a, list(m), p) else 0
    return n


def count_points(C: HyperCurve, d: int) -> int:
    """#C(F_{p^d}) as the sum over closed points of degree dividing d."""
    return sum(e * place_count(C, e) for e in range(1, d + 1) if d % e == 0)


def count_points_brute(C: HyperCurve, d: int) -> int:
    """#C(F_{p^d}) by running over F_{p^d}: sum of 1 + chi(f(x)) plus infinity."""
    from .fields import ExtensionField, PrimeField
    F = PrimeField(C.p) if d == 1 else ExtensionField.default(C.p, d)
    q = C.p ** d
    total = 0
    coeffs = [F(c) for c in C.f]
    e = (q - 1) // 2
    for x in F.elements():
        y = F.zero
        for c in reversed(coeffs):
            y = y * x + c
        if not y:
            total += 1
        elif y ** e == F.one:
            total += 2
    if C.degree % 2:
        total += 1
    else:
        lc = F(C.lc)
        total += 2 if lc ** e == F.one else 0
    return total


def l_polynomial(C: HyperCurve, check: bool = True) -> list:
    """Numerator P(T) of the zeta function, coefficients low-first.

    Built from the counts over F_{p^k}, k <= g, by Newton's identities and the
    functional equation; with ``check`` the count over F_{p^(g+1)} is compared
    with the one P predicts.
    """
    g, q = C.genus, C.p
    S = [0] + [q ** k + 1 - count_points(C, k) for k in range(1, g + 1)]
    a = [1]
    for k in range(1, g + 1):
        s = -sum(S[j] * a[k - j] for j in range(1, k + 1))
        if s % k:
            raise CountMismatch(f"Newton identity not integral at k = {k}")
        a.append(s // k)
    full = a + [q ** (g - k) * a[k] for k in range(g - 1, -1, -1)]
    for k in range(2 * g + 1):
        if full[k] != q ** (k - g) * full[2 * g - k] if k >= g else full[2 * g - k] != q ** (g - k) * full[k]:
            raise CountMismatch("functional equation fails")
    if check:
        k = g + 1
        # S_k from the full polynomial via Newton's identities
        Sk = [0]
        for j in range(1, k + 1):
            s = -j * (full[j] if j <= 2 * g else 0) - sum(Sk[i] * full[j - i] for i in range(1, j))
            Sk.append(s)
        if q ** k + 1 - Sk[k] != count_points(C, k):
            raise CountMismatch(f"count over F_{q}^{k} disagrees with P")
    return full


# ---------------------------------------------------------------- Riemann-Roch

def rr_basis(C: HyperCurve, m: int, neg=(), pos: Mumford | None = None):
    """Basis of L(pos + m * inf - sum(neg)) as pairs (a, b) meaning (a + b y) / u_pos.

    ``m`` counts copies of the infinite divisor (the point for odd models,
    D_inf for inert ones); ``neg`` is a list of semi-reduced divisors that
    must be zeros, pairwise without common points; ``pos`` is a semi-reduced
    divisor of allowed poles, disjoint from ``neg``.
    """
    p = C.p
    up, vp = (list(pos[0]), list(pos[1])) if pos else ([1], [])
    du = len(up) - 1
    # pole order of a(x) + b(x) y at infinity, per infinite point
    if C.kind == "odd":
        # ord_inf x = -2, ord_inf y = -(2g+1)
        amax = (m + 2 * du) // 2
        bmax = (m + 2 * du - C.degree) // 2 if m + 2 * du >= C.degree else -1
    else:
        amax = m + du
        bmax = m + du - C.degree // 2
    na, nb = amax + 1 if amax >= 0 else 0, bmax + 1 if bmax >= 0 else 0
    nvar = na + nb
    if nvar == 0:
        return []
    rows = []

    def cond(u, v, sign):
        # a + sign * b v = 0 mod u, written coefficientwise
        u = list(u)
        n = len(u) - 1
        cols = []
        for i in range(na):
            cols.append(P.mod([0] * i + [1], u, p))
        for j in range(nb):
            cols.append(P.mod(P.scale(P.mul([0] * j + [1], list(v), p), sign, p), u, p))
        for r in range(n):
            rows.append([(c[r] if r < len(c) else 0) for c in cols])

    if pos:
        cond(up, vp, -1)
    for D in neg:
        cond(D[0], D[1], 1)
    basis = _nullspace_mod(rows, nvar, p)
    return [(P.trim(list(vec[:na])), P.trim(list(vec[na:]))) for vec in basis]


def _nullspace_mod(rows, n, p):
    from . import linalg as la
    from .fields import PrimeField
    F = PrimeField(p)
    if not rows:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    M = [[F(x) for x in r] for r in rows]
    return [[x.v for x in vec] for vec in la.nullspace(M, F, n)]


def principal_divisor(C: HyperCurve, a, b) -> tuple[Mumford, int]:
    """Affine part and pole multiplicity of div(a + b y) when gcd(b, N) = 1, N = a^2 - b^2 f."""
    p = C.p
    a, b = P.norm(list(a), p), P.norm(list(b), p)
    N = P.sub(P.mul(a, a, p), P.mul(P.mul(b, b, p), list(C.f), p), p)
    if not N:
        raise HyperellError("zero function")
    if P.deg(P.gcd(b, N, p)) > 0 if b else False:
        raise HyperellError("b and the norm share a factor")
    u = P.monic(N, p)
    if b:
        v = P.mod(P.mul(P.neg(a, p), P.inv_mod(b, u, p), p), u, p) if P.deg(u) > 0 else []
    else:
        # div(a) is a sum of vertical divisors; not semi-reduced
        raise HyperellError("pure polynomial functions have vertical divisors")
    return (_t(u), _t(v)), P.deg(u)


# ---------------------------------------------------------------- group structure

@dataclass
class JacStructure:
    curve: HyperCurve
    order: int
    invariants: list            # d_1 | d_2 | ..., all > 1
    gens: list                  # Mumford keys of the generators
    table: dict                 # element -> coordinate tuple (mod invariants)
    elements: dict = dc_field(default_factory=dict)   # coordinate tuple -> element

    def dlog(self, D: Mumford) -> tuple:
        return self.table[D]

    def element(self, y) -> Mumford:
        y = tuple(int(c) % d for c, d in zip(y, self.invariants))
        return self.elements[y]

    def to_json(self):
        return {"order": self.order, "invariants": self.invariants}


def degree_zero_generators(C: HyperCurve, maxdeg: int):
    """Degree-0 classes attached to closed points, in increasing degree."""
    C.check_arith()
    if C.kind == "odd":
        for d in range(1, maxdeg + 1):
            for pl in places(C, d):
                if pl.mumford is not None:
                    yield reduce_divisor(C, pl.mumford)
        return
    E1 = base_place(C)
    iE1 = iota_divisor(C, E1)
    yield reduce_divisor(C, compose(C, E1, E1))
    for d in range(1, maxdeg + 1):
        for pl in places(C, d):
            D = pl.mumford
            if D is None:
                continue
            if d % 2 == 0:
                yield reduce_divisor(C, D)
            else:
                yield reduce_divisor(C, compose(C, D, iE1))


@lru_cache(maxsize=None)
def base_place(C: HyperCurve) -> Mumford:
    """The first closed point of odd degree (Mumford form) on an inert model."""
    for d in range(1, 2 * C.genus + 2, 2):
        for pl in places(C, d):
            if pl.mumford is not None:
                return pl.mumford
    raise HyperellError("no closed point of odd degree found")


def base_class(C: HyperCurve) -> Mumford:
    """Mumford datum E_1 of the degree-1 base class.

    For odd models the base class is the point at infinity (returned as the
    zero divisor).  For inert models it is c_1 = E_1 - ((k_1 - 1)/2) D_inf
    with E_1 the first closed point of odd degree k_1.
    """
    return ZERO if C.kind == "odd" else base_place(C)


def degree_part(C: HyperCurve, D: Mumford, k: int | None = None) -> Mumford:
    """Degree-0 class of D - k * base for an effective semi-reduced D of degree k."""
    if k is None:
        k = len(D[0]) - 1
    if C.kind == "odd":
        return reduce_divisor(C, D)
    iE1 = iota_divisor(C, base_place(C))
    acc = D
    for _ in range(k):
        acc = compose(C, acc, iE1)
    return reduce_divisor(C, acc)


def inf_part(C: HyperCurve) -> Mumford:
    """Degree-0 class of D_inf - 2 c_1 on an inert model."""
    iE1 = iota_divisor(C, base_place(C))
    return reduce_divisor(C, compose(C, iE1, iE1))


def canonical_class(C: HyperCurve) -> DivisorClass:
    """Class of div(dx / y); stored as (K - (2g - 2) * base, 2g - 2).

    On the odd model K = (2g - 2) inf.  On the inert model K = (g - 1) D_inf,
    the pole divisor of dx/y sitting over x = infinity.
    """
    g = C.genus
    C.check_arith()
    if C.kind == "odd":
        return DivisorClass(C, ZERO, 2 * g - 2)
    return DivisorClass(C, class_mul(C, inf_part(C), g - 1), 2 * g - 2)


def jac_structure(C: HyperCurve, bound: int = 300000, order: int | None = None) -> JacStructure:
    """Enumerate Pic^0 and put it in Smith normal form."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp
    lp = l_polynomial(C)
    N = sum(lp) if order is None else order
    if N > bound:
        raise TooLarge(f"|Pic^0| = {N} exceeds the bound {bound}")
    table = {ZERO: ()}
    hs = []
    rels = []
    for x in degree_zero_generators(C, 2 * C.genus + 2):
        if len(table) == N:
            break
        if x in table:
            continue
        # order of x modulo the current subgroup
        k = len(hs)
        mult, m = x, 1
        while mult not in table:
            mult = class_add(C, mult, x)
            m += 1
        rel = [-c for c in table[mult]] + [0] * (k - len(table[mult]))
        rels.append(rel + [m])
        new = {}
        for e, c in table.items():
            cur = e
            cc = tuple(c) + (0,) * (k - len(c))
            for j in range(m):
                new[cur] = cc + (j,)
                cur = class_add(C, cur, x)
        table = new
        hs.append(x)
    if len(table) != N:
        raise CountMismatch(f"generated {len(table)} classes, expected {N}")
    k = len(hs)
    if k == 0:
        return JacStructure(C, 1, [], [], {ZERO: ()}, {(): ZERO})
    R = Matrix([r + [0] * (k - len(r)) for r in rels])
    S, U, V = smith_normal_decomp(R, domain=ZZ)
    diag = [abs(int(S[i, i])) for i in range(k)]
    keep = [i for i in range(k) if diag[i] != 1]
    invariants = [diag[i] for i in keep]
    Vl = [[int(V[i, j]) for j in range(k)] for i in range(k)]
    out_table = {}
    for e, c in table.items():
        c = tuple(c) + (0,) * (k - len(c))
        y = tuple(sum(c[i] * Vl[i][j] for i in range(k)) % diag[j] for j in keep)
        out_table[e] = y
    elements = {y: e for e, y in out_table.items()}
    if len(elements) != N:
        raise CountMismatch("Smith coordinates are not injective")
    gens = []
    for t in range(len(keep)):
        y = tuple(1 if s == t else 0 for s in range(len(keep)))
        gens.append(elements[y])
    return JacStructure(C, N, invariants, gens, out_table, elements)


# ---------------------------------------------------------------- the double cover

def _reverse_in_square(Q, p):
    """F(s) = s^8 Q(1/s^2) for quartic Q."""
    Q = list(Q) + [0] * (5 - len(Q))
    F = [0] * 9
    for i, c in enumerate(Q[:5]):
        F[8 - 2 * i] = c % p
    return P.trim(F)


@dataclass(frozen=True)
class DoubleCover:
    """w^2 = Q(t^2) -> y^2 = x Q(x), (w, t) -> (t^2, w t).

    The cover curve is stored in the chart s = 1/t, W = w s^4, where it reads
    W^2 = Q^rev(s^2) and the two points over (0, 0) form the inert place at
    infinity; sigma is (s, W) -> (-s, -W) and iota is (s, W) -> (s, -W).
    """
    p: int
    Q: tuple

    def __post_init__(self):
        Q = tuple(P.norm(list(self.Q), self.p))
        object.__setattr__(self, "Q", Q)
        if len(Q) != 5:
            raise BadDegree("Q must be a quartic")
        if Q[0] == 0:
            raise HyperellError("Q(0) must be nonzero")

    @property
    def X(self) -> HyperCurve:
        return _base_curve(self.p, self.Q)

    @property
    def Xt(self) -> HyperCurve:
        return _cover_curve(self.p, self.Q)

    def fiber_sizes(self):
        """Geometric points over (0, 0) and over infinity of X (both must be 2)."""
        zero = 2 if self.Q[0] % self.p else 1
        inf = 2 if self.Q[4] % self.p else 1
        return zero, inf


@lru_cache(maxsize=None)
def _base_curve(p, Q):
    return HyperCurve(p, tuple(P.mul([0, 1], list(Q), p)))


@lru_cache(maxsize=None)
def _cover_curve(p, Q):
    return HyperCurve(p, tuple(_reverse_in_square(Q, p)))


def sigma_divisor(cov: DoubleCover, D: Mumford) -> Mumford:
    """sigma applied to a semi-reduced divisor, without reduction."""
    p = cov.p
    u, v = list(D[0]), list(D[1])
    us = P.monic([c if i % 2 == 0 else (-c) % p for i, c in enumerate(u)], p)
    vs = [(-c) % p if i % 2 == 0 else c for i, c in enumerate(v)]
    return _t(us), _t(P.trim(vs))


def sigma(cov: DoubleCover, D: Mumford) -> Mumford:
    return reduce_divisor(cov.Xt, sigma_divisor(cov, D))


def iota_divisor(C: HyperCurve, D: Mumford) -> Mumford:
    u, v = D
    return u, _t(P.mod(P.neg(list(v), C.p), list(u), C.p))


def iota(C: HyperCurve, D: Mumford) -> Mumford:
    return class_neg(C, D)


def pullback_divisor(cov: DoubleCover, D: Mumford) -> Mumford:
    """The preimage of a semi-reduced divisor of X avoiding (0, 0), as a divisor on X~."""
    p = cov.p
    u, v = list(D[0]), list(D[1])
    if u[0] == 0:
        raise HyperellError("divisor passes through (0, 0)")
    n = len(u) - 1
    U = [0] * (2 * n + 1)
    for i, c in enumerate(u):
        U[2 * n - 2 * i] = c
    U = P.monic(P.trim(U), p)
    V = [0] * 6
    for i, c in enumerate(v):
        V[5 - 2 * i] = c
    V = P.mod(P.trim(V), U, p)
    return _t(U), _t(V)


def pullback(cov: DoubleCover, D: Mumford) -> Mumford:
    """pi^* on degree-0 classes, X -> X~."""
    p = cov.p
    u, v = list(D[0]), list(D[1])
    if u[0] == 0:
        # (0, 0) occurs at most once and pulls back to D_inf
        u = P.quo(u, [0, 1], p)
        v = P.mod(v, u, p)
    if u == [1]:
        return ZERO
    return reduce_divisor(cov.Xt, pullback_divisor(cov, (_t(u), _t(v))))


def _minpoly_and_interp(r_x, r_y, m, p):
    """Minimal polynomial over F_p of r_x in F_p[s]/(m) and v with v(r_x) = r_y.

    v is None when r_y does not lie in F_p(r_x).
    """
    conj = [P.mod(r_x, m, p)]
    while True:
        nxt = P.powmod(conj[-1], p, m, p)
        if nxt == conj[0]:
            break
        conj.append(nxt)
    poly = [[1]]
    for c in conj:
        # poly *= (x - c), coefficients in the residue ring
        new = [[] for _ in range(len(poly) + 1)]
        for i, a in enumerate(poly):
            new[i + 1] = P.add(new[i + 1], a, p)
            new[i] = P.sub(new[i], P.mod(P.mul(a, c, p), m, p), p)
        poly = new
    mp = []
    for a in poly:
        if len(a) > 1:
            raise HyperellError("minimal polynomial not over the prime field")
        mp.append(a[0] if a else 0)
    k = len(conj)
    n = len(m) - 1
    powers = [[1]]
    for _ in range(1, k):
        powers.append(P.mod(P.mul(powers[-1], r_x, p), m, p))
    rows = [[(pw[i] if i < len(pw) else 0) for pw in powers] for i in range(n)]
    rhs = [(r_y[i] if i < len(r_y) else 0) for i in range(n)]
    sol = _solve_mod(rows, rhs, p)
    if sol is None:
        return P.trim(mp), None
    return P.trim(mp), P.trim(sol)


def _solve_mod(rows, rhs, p):
    from . import linalg as la
    from .fields import PrimeField
    F = PrimeField(p)
    A = [[F(x) for x in r] for r in rows]
    x = la.solve(A, [F(b) for b in rhs], F)
    return None if x is None else [c.v for c in x]


def pushforward(cov: DoubleCover, D: Mumford) -> Mumford:
    """pi_* on degree-0 classes, X~ -> X, through the closed points of D."""
    p = cov.p
    X = cov.X
    u, v = list(D[0]), list(D[1])
    out = ZERO
    for fac, mult in P.factor(u, p):
        if fac == [0, 1]:
            continue          # points over t = infinity go to infinity on X
        r = [0, 1]
        rinv = P.inv_mod(r, fac, p)
        x0 = P.mod(P.mul(rinv, rinv, p), fac, p)
        r5 = P.powmod(rinv, 5, fac, p)
        y0 = P.mod(P.mul(P.mod(v, fac, p), r5, p), fac, p)
        mp, vq = _minpoly_and_interp(x0, y0, fac, p)
        if vq is None:
            continue          # y not in F_p(x): the image is a vertical place, class 0
        ratio = (len(fac) - 1) // (len(mp) - 1)
        Q = (_t(mp), _t(P.mod(vq, mp, p)))
        for _ in range(ratio * mult):
            out = class_add(X, out, reduce_divisor(X, Q))
    return out
