"""Square classes K^x / (K^x)^2 with canonical representatives.

Canonical representatives:

* Q: the squarefree integer (sign included) in the class.
* Q(i): a unit in {1, i} times distinct Gaussian primes normalised to the
  first quadrant (real part > 0, imaginary part >= 0).  Since -1 = i^2 the
  units collapse to two classes.
* finite fields: 1 for squares, the least non-square otherwise (for F_{p^s}
  "least" is lexicographic on coefficient tuples, top degree first).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

from sympy import factorint

from .fields import (QQ, QQi, ExtensionField, FieldMismatch, Fp, Fq, Gauss,
                     GaussianRationals, PrimeField, Rationals, ZeroInput, field_of)

GPrime = tuple[int, int]


class SquareClass:
    """An element of K^x/2.

    ``rep`` is the canonical representative (see the module docstring).  For
    Q and Q(i) it needs an integer factorisation, so it is computed lazily;
    equality and triviality are decided with exact square roots instead,
    which stays cheap even for large numerators.
    """

    __slots__ = ("field", "_val", "_rep")

    def __init__(self, field, val, rep=None):
        self.field = field
        self._val = val      # some element of the class (int for Q, Gaussian integer for Q(i))
        self._rep = rep

    @property
    def rep(self):
        if self._rep is None:
            F = self.field
            if isinstance(F, Rationals):
                self._rep = _squarefree(self._val)
            elif isinstance(F, GaussianRationals):
                self._rep = gaussian_canonical(Gauss(*self._val))._rep
            else:
                self._rep = self._val
        return self._rep

    @property
    def is_trivial(self) -> bool:
        F = self.field
        if isinstance(F, Rationals):
            return _int_is_square(self._val)
        if isinstance(F, GaussianRationals):
            return _gauss_is_square(self._val)
        return self._val == 1

    def __eq__(self, other):
        if not isinstance(other, SquareClass):
            return NotImplemented
        if self.field != other.field:
            return False
        return sq_mul(self, other).is_trivial

    def __hash__(self):
        F = self.field
        if isinstance(F, Rationals):
            return hash(("Q", self._val > 0))
        if isinstance(F, GaussianRationals):
            return hash("Q(i)")
        return hash((F.name, self._val))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return sq_mul(self, other)

    def __repr__(self):
        return f"SquareClass({self.field.name}: {self})"

    def representative(self):
        """A field element lying in this class (the canonical one)."""
        F = self.field
        if isinstance(F, Rationals):
            return Fraction(self.rep)
        if isinstance(F, GaussianRationals):
            unit, primes = self.rep
            z = Gauss(0, 1) if unit else Gauss(1)
            for a, b in primes:
                z = z * Gauss(a, b)
            return z
        if isinstance(F, PrimeField):
            return F(self.rep)
        return F(list(self.rep)[::-1]) if isinstance(self.rep, tuple) else F(self.rep)

    def __str__(self):
        F = self.field
        if isinstance(F, Rationals):
            return str(self.rep)
        if isinstance(F, GaussianRationals):
            unit, primes = self.rep
            parts = (["i"] if unit else []) + [_gp_str(g) for g in primes]
            return "*".join(parts) if parts else "1"
        if isinstance(F, PrimeField):
            return f"{self.rep} mod {F.p}"
        if self.rep == 1:
            return f"1 in {F.name}"
        return f"[{','.join(map(str, self.rep))}] in {F.name}"

    def to_json(self):
        return {"field": self.field.name, "class": str(self), "trivial": self.is_trivial}


def _gp_str(g: GPrime) -> str:
    a, b = g
    if b == 0:
        return str(a)
    return f"({a}+{b}i)"


def trivial(F) -> SquareClass:
    if isinstance(F, GaussianRationals):
        return SquareClass(F, (1, 0), (0, ()))
    return SquareClass(F, 1, 1)


def _finite_nonsquare_rep(F):
    x = F.nonsquare()
    if isinstance(F, PrimeField):
        return x.v
    return tuple(reversed(x.c))


def _int_is_square(n: int) -> bool:
    return n > 0 and isqrt(n) ** 2 == n


def _gauss_is_square(z: tuple[int, int]) -> bool:
    """Is the Gaussian integer a+bi a square in Q(i)?  (Then it is one in Z[i].)"""
    a, b = z
    if b == 0:
        # a or -a = i^2 a must be a rational square
        return _int_is_square(abs(a))
    n2 = a * a + b * b
    n = isqrt(n2)
    if n * n != n2:
        return False
    # x^2 = (a + n)/2, y^2 = (n - a)/2, 2xy = b
    for num in (a + n, n - a):
        if num % 2 or not _int_is_square(num // 2):
            return False
    x = isqrt((a + n) // 2)
    y = isqrt((n - a) // 2)
    return 2 * x * y == abs(b)


def _gauss_gcd(z, w):
    while w != (0, 0):
        a, b = z
        c, d = w
        n = c * c + d * d
        re = a * c + b * d
        im = b * c - a * d
        qr = (2 * re + n) // (2 * n)
        qi = (2 * im + n) // (2 * n)
        z, w = w, (a - (qr * c - qi * d), b - (qr * d + qi * c))
    return z


def _gauss_mul(z, w):
    a, b = z
    c, d = w
    return (a * c - b * d, a * d + b * c)


def _gauss_exact_div(z, w):
    a, b = z
    c, d = w
    n = c * c + d * d
    re = a * c + b * d
    im = b * c - a * d
    assert re % n == 0 and im % n == 0
    return (re // n, im // n)


def _gauss_int_of(z: Gauss) -> tuple[int, int]:
    """A Gaussian integer in the same square class as z."""
    den = lcm(z.re.denominator, z.im.denominator)
    # z = (a+bi)/den ~ (a+bi)*den
    return (int(z.re * den) * den, int(z.im * den) * den)


def sq_classify(x, F=None) -> SquareClass:
    """Canonical square class of a nonzero scalar."""
    F = F if F is not None else field_of(x)
    x = F(x)
    if not x:
        raise ZeroInput("zero has no square class")
    if isinstance(F, Rationals):
        n = x.numerator * x.denominator
        return SquareClass(F, n)
    if isinstance(F, GaussianRationals):
        return SquareClass(F, _gauss_int_of(x))
    if F.is_square(x):
        return SquareClass(F, 1, 1)
    r = _finite_nonsquare_rep(F)
    return SquareClass(F, r, r)


def sq_mul(a: SquareClass, b: SquareClass) -> SquareClass:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.name} vs {b.field.name}")
    F = a.field
    if isinstance(F, Rationals):
        g = gcd(a._val, b._val)
        return SquareClass(F, (a._val // g) * (b._val // g))
    if isinstance(F, GaussianRationals):
        g = _gauss_gcd(a._val, b._val)
        return SquareClass(F, _gauss_mul(_gauss_exact_div(a._val, g), _gauss_exact_div(b._val, g)))
    if a.is_trivial == b.is_trivial:
        return trivial(F)
    r = _finite_nonsquare_rep(F)
    return SquareClass(F, r, r)


def sq_prod(classes, F) -> SquareClass:
    out = trivial(F)
    for c in classes:
        out = sq_mul(out, c)
    return out


def sq_of_sign(sign: int, F) -> SquareClass:
    return sq_classify(F(sign), F)


# ---------------------------------------------------------------- Q

def _squarefree(n: int) -> int:
    if n == 0:
        raise ZeroInput("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


# ---------------------------------------------------------------- Q(i)

def _first_quadrant(a: int, b: int) -> tuple[tuple[int, int], int]:
    """Associate of a+bi with re > 0, im >= 0, and k with a+bi = i^k * associate."""
    for k in range(4):
        # multiply by i^{-k}: (a+bi) * (-i)^k
        x, y = a, b
        for _ in range(k):
            x, y = y, -x
        if x > 0 and y >= 0:
            return (x, y), k
    raise ZeroInput("zero Gaussian integer")


@lru_cache(maxsize=None)
def _split_prime(p: int) -> GPrime:
    """A first-quadrant Gaussian prime of norm p for p = 1 mod 4."""
    a = 1
    while a * a < p:
        b2 = p - a * a
        b = int(round(b2 ** 0.5))
        for bb in (b - 1, b, b + 1):
            if bb > 0 and bb * bb == b2:
                return _first_quadrant(a, bb)[0]
        a += 1
    raise AssertionError(p)


def _gdivmod_exact(a: int, b: int, c: int, d: int):
    """(a+bi)/(c+di) if exact, else None."""
    n = c * c + d * d
    re = a * c + b * d
    im = b * c - a * d
    if re % n or im % n:
        return None
    return re // n, im // n


def _gaussian_int_factor(a: int, b: int) -> tuple[int, dict[GPrime, int]]:
    """a+bi = i^k * prod pi^e with first-quadrant primes pi."""
    if a == 0 and b == 0:
        raise ZeroInput("zero has no square class")
    n = a * a + b * b
    exps: dict[GPrime, int] = {}
    for p, e in factorint(n).items():
        if p == 2:
            cands = [(1, 1)]
        elif p % 4 == 3:
            cands = [(p, 0)]
        else:
            x, y = _split_prime(p)
            cands = [(x, y), _first_quadrant(x, -y)[0]]
        for pi in cands:
            while True:
                q = _gdivmod_exact(a, b, *pi)
                if q is None:
                    break
                a, b = q
                exps[pi] = exps.get(pi, 0) + 1
    # what remains is a unit
    unit = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[(a, b)]
    return unit, exps


def gaussian_canonical(z) -> SquareClass:
    """Square class of a nonzero Gaussian rational via first-quadrant factorisation."""
    z = QQi(z)
    if not z:
        raise ZeroInput("zero has no square class")
    den = lcm(z.re.denominator, z.im.denominator)
    a = int(z.re * den)
    b = int(z.im * den)
    unit, exps = _gaussian_int_factor(a, b)
    # 1/den has the class of den
    du, dexps = _gaussian_int_factor(den, 0)
    unit += du
    for pi, e in dexps.items():
        exps[pi] = exps.get(pi, 0) + e
    odd = tuple(sorted(pi for pi, e in exps.items() if e % 2))
    return SquareClass(QQi, (a * den, b * den), (unit % 2, odd))


# ---------------------------------------------------------------- misc

def is_square(x, F=None) -> bool:
    return sq_classify(x, F).is_trivial


def class_of_i() -> SquareClass:
    return SquareClass(QQi, (0, 1), (1, ()))
