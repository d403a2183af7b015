"""Quaternionic local systems on y^2 = x Q(x) and their central L-values.

A datum is a quartic Q over F_p with Q(0) a non-square.  The genus-3 cover
X~ : w^2 = Q(t^2) of X : y^2 = x Q(x) is handled in the chart s = 1/t where
the two points over t = 0 form the degree-2 place D_0 = D_inf.

A character alpha : Pic(X~) -> Z/4 is recorded by its values ``a`` on the
Smith generators of Pic^0(X~) and its value ``a1`` on the degree-1 base
class c_1 (see ``hyperell.base_class``).  The value on an effective divisor
E of degree k is alpha_0(E - k c_1) + k a1.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import hyperell as H
from . import polyfp as P
from .fields import QQ
from .squareclass import sq_classify


class Q8Error(ValueError):
    pass


class QZeroSquare(Q8Error):
    pass


class Ramified(Q8Error):
    pass


class ZeroCentralValue(Q8Error):
    pass


class InvalidAlpha(Q8Error):
    pass


# the example curves, as binary octic forms f with f(x, z) + y^2 = 0
PAPER_FORMS = {
    5: (2, 0, 2, 0, -4, 0, -3, 0, -3),
    11: (1, 0, 4, 0, 2, 0, 3, 0, 5),
    13: (5, 0, 2, 0, -6, 0, -7, 0, 7),
    17: (5, 0, 15, 0, 15, 0, 2, 0, 12),
}


def quartic_from_form(p: int, form) -> tuple:
    """Q (low degree first) with w^2 = Q(t^2) the curve f(t, 1) + w^2 = 0.

    ``form`` lists the coefficients of x^8, x^7 z, ..., z^8; odd positions
    must vanish.
    """
    form = [int(c) for c in form]
    if len(form) != 9:
        raise Q8Error("expected 9 coefficients of a binary octic")
    if any(form[i] % p for i in range(1, 9, 2)):
        raise Q8Error("the octic must be even in x")
    # coefficient of x^(8 - i) is form[i]; Q(u) has u^k <- x^(2k)
    return tuple((-form[8 - 2 * k]) % p for k in range(5))


def paper_quartic(p: int) -> tuple:
    return quartic_from_form(p, PAPER_FORMS[p])


# ---------------------------------------------------------------- the datum

@dataclass
class Q8Datum:
    p: int
    Q: tuple
    cover: H.DoubleCover
    jac_X: H.JacStructure
    jac_Xt: H.JacStructure
    sigma_coords: list          # coordinates of sigma(g_i)
    sigma_c1: tuple             # coordinates of sigma c_1 - c_1
    inf_c1: tuple               # coordinates of D_inf - 2 c_1
    zero_minus_inf: tuple       # coordinates of (0) - (inf) in Pic^0(X)
    _places: dict = dc_field(default_factory=dict, repr=False)

    @property
    def X(self):
        return self.cover.X

    @property
    def Xt(self):
        return self.cover.Xt

    @property
    def q(self) -> int:
        return self.p

    def curve_label(self) -> str:
        return f"F{self.p}:Q=" + ",".join(str(c) for c in self.Q)

    def place_table(self, d: int) -> list:
        """(degree, coords of P - d c_1 or None, alpha shift) per closed point of degree d.

        Vertical places of degree 2e and D_inf have class e D_inf and are
        recorded with coords None; their alpha value is e * alpha(D_inf).
        """
        if d not in self._places:
            Xt = self.Xt
            out = []
            for pl in H.places(Xt, d):
                if pl.kind == "infinity":
                    out.append((d, None, 1))
                elif pl.kind == "vertical":
                    out.append((d, None, d // 2))
                else:
                    D = H.degree_part(Xt, pl.mumford, d)
                    out.append((d, self.jac_Xt.dlog(D), 0))
            self._places[d] = out
        return self._places[d]


def build_datum(p: int, Q, bound: int = 300000) -> Q8Datum:
    Q = tuple(c % p for c in Q)
    if len(Q) != 5 or Q[4] == 0:
        raise H.BadDegree("Q must be a quartic")
    if Q[0] == 0:
        raise Q8Error("Q(0) must be nonzero")
    if pow(Q[0], (p - 1) // 2, p) == 1:
        raise QZeroSquare(f"Q(0) = {Q[0]} is a square mod {p}")
    if not P.is_squarefree(list(Q), p):
        raise H.NotSquarefree("Q has a repeated root")
    cov = H.DoubleCover(p, Q)
    if cov.fiber_sizes() != (2, 2):
        raise Ramified("cover ramified over (0, 0) or infinity")
    X, Xt = cov.X, cov.Xt
    jX = H.jac_structure(X, bound)
    jT = H.jac_structure(Xt, bound)
    sig = [jT.dlog(H.sigma(cov, g)) for g in jT.gens]
    E1 = H.base_place(Xt)
    sc1 = H.reduce_divisor(Xt, H.compose(Xt, H.sigma_divisor(cov, E1), H.iota_divisor(Xt, E1)))
    zmi = jX.dlog(H.reduce_divisor(X, ((0, 1), ())))
    return Q8Datum(p, Q, cov, jX, jT, sig, jT.dlog(sc1), jT.dlog(H.inf_part(Xt)), zmi)


# ---------------------------------------------------------------- characters

@dataclass(frozen=True)
class CharacterAlpha:
    a: tuple       # values on the Smith generators of Pic^0(X~)
    a1: int        # value on c_1

    def key(self):
        return self.a + (self.a1,)

    def label(self) -> str:
        return "".join(str(x) for x in self.a) + ":" + str(self.a1)


def alpha0(d: Q8Datum, alpha: CharacterAlpha, coords) -> int:
    return sum(x * y for x, y in zip(alpha.a, coords)) % 4


def alpha_of_effective(d: Q8Datum, alpha: CharacterAlpha, D: H.Mumford, k: int | None = None) -> int:
    """alpha on an effective semi-reduced divisor of X~."""
    if k is None:
        k = len(D[0]) - 1
    c = d.jac_Xt.dlog(H.degree_part(d.Xt, D, k))
    return (alpha0(d, alpha, c) + k * alpha.a1) % 4


def alpha_inf(d: Q8Datum, alpha: CharacterAlpha) -> int:
    return (alpha0(d, alpha, d.inf_c1) + 2 * alpha.a1) % 4


def admissible(d: Q8Datum, alpha: CharacterAlpha, surjectivity: str = "order4") -> bool:
    inv = d.jac_Xt.invariants
    if any((n * x) % 4 for n, x in zip(inv, alpha.a)):
        return False
    for i, c in enumerate(d.sigma_coords):
        if (alpha0(d, alpha, c) + alpha.a[i]) % 4:
            return False
    if (alpha0(d, alpha, d.sigma_c1) + 2 * alpha.a1) % 4:
        return False
    if alpha_inf(d, alpha) != 2:
        return False
    if surjectivity == "order4":
        return any(x % 2 for x in alpha.a)
    if surjectivity == "nontrivial":
        return any(alpha.a)
    raise Q8Error(f"unknown surjectivity mode {surjectivity!r}")


def orbit(alpha: CharacterAlpha) -> list:
    """Negation, the twist by 2 deg, and the hyperelliptic pullback."""
    a, a1 = alpha.a, alpha.a1
    na = tuple((-x) % 4 for x in a)
    return [CharacterAlpha(a, a1), CharacterAlpha(a, (a1 + 2) % 4),
            CharacterAlpha(na, (-a1) % 4), CharacterAlpha(na, (2 - a1) % 4)]


def iota_pullback(d: Q8Datum, alpha: CharacterAlpha) -> CharacterAlpha:
    """alpha o iota, computed from the action of iota on classes."""
    jT = d.jac_Xt
    # iota acts as -1 on Pic^0 and sends c_1 to D_inf - c_1
    new_a = []
    for g in jT.gens:
        new_a.append(alpha0(d, alpha, jT.dlog(H.class_neg(d.Xt, g))))
    a1 = (alpha_inf(d, alpha) - alpha.a1) % 4
    return CharacterAlpha(tuple(new_a), a1)


def enumerate_alphas(d: Q8Datum, surjectivity: str = "order4", orbits: bool = True) -> list:
    inv = d.jac_Xt.invariants
    choices = [[x for x in range(4) if (n * x) % 4 == 0] for n in inv]
    found = []
    for a in itertools.product(*choices):
        for a1 in range(4):
            al = CharacterAlpha(tuple(a), a1)
            if admissible(d, al, surjectivity):
                found.append(al)
    if not orbits:
        return found
    seen = set()
    reps = []
    for al in found:
        if al.key() in seen:
            continue
        orb = orbit(al)
        seen.update(o.key() for o in orb)
        reps.append(min(orb, key=lambda o: o.key()))
    return sorted(reps, key=lambda o: o.key())


# ---------------------------------------------------------------- L-coefficients

_I = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def _gmul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def _gadd(z, w):
    return (z[0] + w[0], z[1] + w[1])


def place_alpha(d: Q8Datum, alpha: CharacterAlpha, entry) -> int:
    deg, coords, shift = entry
    if coords is None:
        return (shift * alpha_inf(d, alpha)) % 4
    return (alpha0(d, alpha, coords) + deg * alpha.a1) % 4


def l_coefficients(d: Q8Datum, alpha: CharacterAlpha, top: int = 4) -> list:
    """L_0 .. L_top as Gaussian integers (re, im), from the Euler product."""
    series = [(0, 0)] * (top + 1)
    series[0] = (1, 0)
    for deg in range(1, top + 1):
        for entry in d.place_table(deg):
            chi = _I[place_alpha(d, alpha, entry)]
            # multiply by 1 / (1 - chi T^deg) = sum chi^k T^(k deg)
            new = list(series)
            for n in range(deg, top + 1):
                new[n] = _gadd(new[n], _gmul(chi, new[n - deg]))
            series = new
    return series


def l2_direct(d: Q8Datum, alpha: CharacterAlpha) -> tuple:
    """L_2 summed over effective divisors of degree 2, each evaluated as a class."""
    Xt = d.Xt
    ones = [pl.mumford for pl in H.places(Xt, 1)]
    total = (0, 0)
    for i in range(len(ones)):
        for j in range(i, len(ones)):
            D = H.compose(Xt, ones[i], ones[j])
            if len(D[0]) - 1 == 2:
                v = alpha_of_effective(d, alpha, D, 2)
            else:
                # P + iota P collapses to a vertical fibre, which is ~ D_inf
                v = alpha_inf(d, alpha)
            total = _gadd(total, _I[v])
    for pl in H.places(Xt, 2):
        if pl.mumford is not None:
            v = alpha_of_effective(d, alpha, pl.mumford, 2)
        else:
            v = alpha_inf(d, alpha)
        total = _gadd(total, _I[v])
    return total


def central_value(d: Q8Datum, alpha: CharacterAlpha, L=None) -> int:
    L = L or l_coefficients(d, alpha)
    re, im = L[2]
    if im:
        raise Q8Error(f"L_2 = {L[2]} is not real")
    c = 2 * d.q + re
    if c < 0:
        raise Q8Error(f"negative central value {c}")
    return c


def central_from_polynomial(d: Q8Datum, L) -> Fraction:
    """q * L(1/sqrt q) from all five coefficients, odd terms checked to cancel."""
    q = d.q
    if L[1] != (0, 0) or L[3] != (0, 0):
        raise Q8Error("odd coefficients do not vanish")
    even = Fraction(L[0][0]) + Fraction(L[2][0], q) + Fraction(L[4][0], q * q)
    return q * even


def check_l_structure(d: Q8Datum, L) -> list:
    """Names of the structural properties that fail (empty when all hold)."""
    q = d.q
    bad = []
    if L[0] != (1, 0):
        bad.append("L0")
    if L[1] != (0, 0):
        bad.append("L1")
    if len(L) > 3 and L[3] != (q * L[1][0], q * L[1][1]):
        bad.append("L3")
    if len(L) > 4 and L[4] != (q * q, 0):
        bad.append("L4")
    if L[2][1]:
        bad.append("L2-real")
    c = 2 * q + L[2][0]
    if c < 0:
        bad.append("positivity")
    return bad


# ---------------------------------------------------------------- the pairing

def _subgroup(gens, inv):
    seen = {tuple(0 for _ in inv)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % n for a, b, n in zip(x, g, inv))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def kernel_generators(d: Q8Datum, alpha: CharacterAlpha) -> list:
    """Generators (as classes) of ker(2 alpha_0) in Pic^0(X~)."""
    jT = d.jac_Xt
    odd = [i for i, x in enumerate(alpha.a) if x % 2]
    out = []
    for i, g in enumerate(jT.gens):
        if alpha.a[i] % 2 == 0:
            out.append(g)
        else:
            out.append(H.class_add(d.Xt, g, g))
            if i != odd[0]:
                out.append(H.class_add(d.Xt, g, jT.gens[odd[0]]))
    return out


def chern_pairing(d: Q8Datum, alpha: CharacterAlpha) -> int:
    """0 when (0) - (inf) lies in pi_*(ker alpha^2), else 1."""
    jX = d.jac_X
    imgs = [jX.dlog(H.pushforward(d.cover, g)) for g in kernel_generators(d, alpha)]
    S = _subgroup(imgs, jX.invariants)
    return 0 if d.zero_minus_inf in S else 1


def norm_image(d: Q8Datum, alpha: CharacterAlpha) -> set:
    """pi_* of every element of ker(2 alpha_0), enumerated element by element."""
    jT, jX = d.jac_Xt, d.jac_X
    out = set()
    for y, e in jT.elements.items():
        if alpha0(d, alpha, y) % 2 == 0:
            out.add(jX.dlog(H.pushforward(d.cover, e)))
    return out


# ---------------------------------------------------------------- consistency checks

def alphares_check(d: Q8Datum, alpha: CharacterAlpha) -> bool:
    """alpha(pi^* x) is 0 for closed points x of X that split in X~ and 2 otherwise (deg x <= 2)."""
    p = d.p
    lc_square = pow(d.Q[4], (p - 1) // 2, p) == 1
    # the fibre over infinity is the s = 0 fibre, linearly equivalent to D_inf
    if alpha_inf(d, alpha) != (0 if lc_square else 2):
        return False
    for deg in (1, 2):
        for pl in H.places(d.X, deg):
            if pl.kind == "infinity":
                continue
            if pl.u == (0, 1):
                val, splits = alpha_inf(d, alpha), False
            elif pl.mumford is None:
                # a whole vertical fibre x = x0 of X; it pulls back to a fibre
                # of s^2 = 1/x0, i.e. to 2 D_inf, and x0 is a square in F_p^2
                val, splits = 2 * alpha_inf(d, alpha) % 4, True
            else:
                x0 = P.mod([0, 1], list(pl.u), p)
                splits = P.is_square_mod(x0, list(pl.u), p)
                val = alpha_of_effective(d, alpha, H.pullback_divisor(d.cover, pl.mumford), 2 * deg)
            if val != (0 if splits else 2):
                return False
    return True


def canonical_alpha(d: Q8Datum, alpha: CharacterAlpha) -> int:
    K = H.canonical_class(d.Xt)
    return (alpha0(d, alpha, d.jac_Xt.dlog(K.rep)) + K.degree * alpha.a1) % 4


# ---------------------------------------------------------------- reports

def square_class_int(n: int):
    return sq_classify(Fraction(n), QQ)


@dataclass
class InstanceReport:
    curve: str
    alpha_id: str
    L: list
    central: int
    central_sqclass: int | None
    pairing: int
    verdict: str
    checks: dict
    seconds: float = 0.0

    def to_json(self, timings: bool = False):
        out = {
            "curve": self.curve,
            "alpha_id": self.alpha_id,
            "L": [list(z) for z in self.L],
            "central": self.central,
            "central_sqclass": self.central_sqclass,
            "pairing": self.pairing,
            "verdict": self.verdict,
            "checks": self.checks,
        }
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out

    @property
    def agrees(self) -> bool:
        return self.verdict in ("agree", "zero")


def verify_instance(d: Q8Datum, alpha: CharacterAlpha) -> InstanceReport:
    t0 = time.perf_counter()
    L = l_coefficients(d, alpha)
    bad = check_l_structure(d, L)
    checks = {"l_structure": not bad, "l2_direct": l2_direct(d, alpha) == L[2],
              "alphares": alphares_check(d, alpha), "alpha_K": canonical_alpha(d, alpha) == 0}
    pairing = chern_pairing(d, alpha)
    c = 2 * d.q + L[2][0]
    if bad:
        verdict = "malformed"
        sq = None
    elif c == 0:
        verdict = "zero"
        sq = None
    else:
        sq = square_class_int(c).rep
        square = sq == 1
        verdict = "agree" if square == (pairing == 0) else "counterexample"
    return InstanceReport(d.curve_label(), alpha.label(), L, c, sq, pairing, verdict, checks,
                          time.perf_counter() - t0)


def verify_curve(p: int, Q, surjectivity: str = "order4", bound: int = 300000) -> list:
    d = build_datum(p, Q, bound)
    return [verify_instance(d, al) for al in enumerate_alphas(d, surjectivity)]


# ---------------------------------------------------------------- sweeps

def quartic_orbit_key(p: int, Q) -> tuple:
    """Least member of {c Q(l x) : c, l nonzero squares}."""
    sq = sorted({x * x % p for x in range(1, p)})
    best = None
    for c in sq:
        for lam in sq:
            R = tuple(c * Q[k] * pow(lam, k, p) % p for k in range(5))
            key = tuple(reversed(R))
            if best is None or key < best:
                best = key
    return tuple(reversed(best))


def admissible_quartics(p: int) -> list:
    """Representatives of quartics Q with Q squarefree, Q(0) a non-square, up to symmetry."""
    nonsq = [x for x in range(1, p) if pow(x, (p - 1) // 2, p) != 1]
    reps = set()
    for lc in range(1, p):
        for mid in itertools.product(range(p), repeat=3):
            for c0 in nonsq:
                Q = (c0,) + mid + (lc,)
                if not P.is_squarefree(list(Q), p):
                    continue
                reps.add(quartic_orbit_key(p, Q))
    return sorted(reps, key=lambda Q: tuple(reversed(Q)))


def _sweep_one(args):
    p, Q, surj, bound = args
    try:
        return Q, [r.to_json() for r in verify_curve(p, Q, surj, bound)], None
    except H.HyperellError as exc:
        return Q, [], f"{type(exc).__name__}: {exc}"


def default_jobs() -> int:
    env = os.environ.get("TORSQ_JOBS")
    if env:
        return max(1, int(env))
    return 1


def sweep(p: int, quartics=None, jobs: int | None = None, surjectivity: str = "order4",
          bound: int = 300000):
    """Yield (Q, records, error) for each quartic, in the input order."""
    quartics = admissible_quartics(p) if quartics is None else list(quartics)
    jobs = jobs or default_jobs()
    tasks = [(p, tuple(Q), surjectivity, bound) for Q in quartics]
    if jobs <= 1:
        for t in tasks:
            yield _sweep_one(t)
        return
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        yield from ex.map(_sweep_one, tasks, chunksize=4)
