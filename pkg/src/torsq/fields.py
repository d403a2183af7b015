"""Exact scalar arithmetic for the four supported ground fields.

Elements are immutable.  Rationals use :class:`fractions.Fraction`; the other
three fields get small value classes below.  A field object knows how to
coerce, parse, print, sample and test squareness of its elements.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator


class FieldError(ValueError):
    pass


class ZeroInput(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------- F_p

class Fp:
    """Residue modulo an odd prime, stored in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, o):
        if isinstance(o, Fp):
            if o.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{o.p}")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else Fp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else Fp(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else Fp(w - self.v, self.p)

    def __mul__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else Fp(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._lift(o)
        if w is NotImplemented:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._lift(o)
        if w is NotImplemented:
            return NotImplemented
        return Fp(w, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return Fp(pow(self.v, -1, self.p), self.p) ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Fp):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"


# ---------------------------------------------------------------- F_{p^s}

def _pmod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    """Reduce coefficient list a (low degree first) modulo monic m."""
    a = [c % p for c in a]
    d = len(m) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * m[j]) % p
    a = a[:d] + [0] * max(0, d - len(a))
    return a


class Fq:
    """Element of F_p[x]/(modulus), coefficients low degree first."""

    __slots__ = ("c", "F")

    def __init__(self, coeffs, F: "ExtensionField"):
        self.F = F
        self.c = tuple(_pmod(list(coeffs), F.modulus, F.p))

    def _lift(self, o):
        if isinstance(o, Fq):
            if o.F != self.F:
                raise FieldMismatch("different extension fields")
            return o
        if isinstance(o, (int, Fp)):
            return self.F(o)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Fq([a + b for a, b in zip(self.c, o.c)], self.F)

    __radd__ = __add__

    def __neg__(self):
        return Fq([-a for a in self.c], self.F)

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Fq([a - b for a, b in zip(self.c, o.c)], self.F)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        prod = [0] * (2 * len(self.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    prod[i + j] += a * b
        return Fq(prod, self.F)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r, b = self.F.one, self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in F_q")
        return self ** (self.F.order - 2)

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, (int, Fp)):
            o = self.F(o)
        if isinstance(o, Fq):
            return self.F == o.F and self.c == o.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return "[" + ",".join(map(str, self.c)) + f"] mod {self.F.p}"


# ---------------------------------------------------------------- Q(i)

class Gauss:
    """a + b i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(o):
        if isinstance(o, Gauss):
            return o
        if isinstance(o, (int, Fraction)):
            return Gauss(o, 0)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conj(self):
        return Gauss(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return Gauss(self.re / n, -self.im / n)

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r, b = Gauss(1), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return format_gauss(self)


I = Gauss(0, 1)


def format_gauss(z: Gauss) -> str:
    """Short form that ``GaussianRationals.parse`` reads back: "4", "-1/2-i", "3/2*i"."""
    re_, im = Fraction(z.re), Fraction(z.im)
    if not im:
        return str(re_)
    mag = abs(im)
    ipart = "i" if mag == 1 else f"{mag}*i"
    if not re_:
        return ipart if im > 0 else "-" + ipart
    return f"{re_}{'+' if im > 0 else '-'}{ipart}"


# ---------------------------------------------------------------- fields

_RAT = r"[+-]?\d+(?:/\d+)?"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p == 2 or not _is_prime(self.p):
            raise FieldError(f"{self.p} is not an odd prime")

    name = property(lambda self: f"F{self.p}")
    order = property(lambda self: self.p)
    char = property(lambda self: self.p)
    finite = True

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element given to F_{self.p}")
            return x
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / x.denominator
        return Fp(int(x), self.p)

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def elements(self) -> Iterator[Fp]:
        return (Fp(k, self.p) for k in range(self.p))

    def is_square(self, x) -> bool:
        x = self(x)
        if not x:
            raise ZeroInput("zero has no square class")
        return pow(x.v, (self.p - 1) // 2, self.p) == 1

    def nonsquare(self) -> Fp:
        for k in range(2, self.p):
            if pow(k, (self.p - 1) // 2, self.p) != 1:
                return Fp(k, self.p)
        raise AssertionError

    def random(self, rng: random.Random, nonzero: bool = False) -> Fp:
        return Fp(rng.randrange(1 if nonzero else 0, self.p), self.p)

    def fmt(self, x) -> str:
        return f"{self(x).v} mod {self.p}"

    def parse(self, s: str) -> Fp:
        s = s.strip()
        m = re.fullmatch(r"([+-]?\d+)\s*(?:mod\s*(\d+))?", s)
        if m:
            if m.group(2) and int(m.group(2)) != self.p:
                raise FieldError(f"modulus {m.group(2)} does not match F_{self.p}")
            return Fp(int(m.group(1)), self.p)
        if re.fullmatch(_RAT, s):
            return self(Fraction(s))
        raise FieldError(f"cannot parse {s!r} as an element of F_{self.p}")


@dataclass(frozen=True)
class ExtensionField:
    p: int
    s: int
    modulus: tuple[int, ...]  # monic, low degree first, length s+1

    def __post_init__(self):
        if self.p == 2 or not _is_prime(self.p):
            raise FieldError(f"{self.p} is not an odd prime")
        m = tuple(c % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) != self.s + 1 or m[-1] != 1:
            raise FieldError("modulus must be monic of degree s")
        from .polyfp import is_irreducible
        if not is_irreducible(list(m), self.p):
            raise FieldError("modulus is reducible")

    @classmethod
    def default(cls, p: int, s: int) -> "ExtensionField":
        """The field with the lexicographically least irreducible modulus."""
        from .polyfp import first_irreducible
        return cls(p, s, tuple(first_irreducible(s, p)))

    name = property(lambda self: f"F{self.p}^{self.s}")
    order = property(lambda self: self.p ** self.s)
    char = property(lambda self: self.p)
    finite = True

    def __call__(self, x) -> Fq:
        if isinstance(x, Fq):
            if x.F != self:
                raise FieldMismatch("element of a different extension field")
            return x
        if isinstance(x, (list, tuple)):
            return Fq(x, self)
        if isinstance(x, Fp):
            return Fq([x.v], self)
        if isinstance(x, Fraction):
            return Fq([x.numerator * pow(x.denominator, -1, self.p)], self)
        return Fq([int(x)], self)

    @property
    def zero(self):
        return Fq([0], self)

    @property
    def one(self):
        return Fq([1], self)

    def elements(self) -> Iterator[Fq]:
        """All elements, in lexicographic order of coefficient tuples (high degree first)."""
        q = self.order
        for k in range(q):
            digits = []
            for _ in range(self.s):
                digits.append(k % self.p)
                k //= self.p
            yield Fq(digits, self)

    def is_square(self, x) -> bool:
        x = self(x)
        if not x:
            raise ZeroInput("zero has no square class")
        return x ** ((self.order - 1) // 2) == self.one

    def nonsquare(self) -> Fq:
        for x in self.elements():
            if x and not self.is_square(x):
                return x
        raise AssertionError

    def random(self, rng: random.Random, nonzero: bool = False) -> Fq:
        while True:
            x = Fq([rng.randrange(self.p) for _ in range(self.s)], self)
            if x or not nonzero:
                return x

    def fmt(self, x) -> str:
        return "[" + ",".join(map(str, self(x).c)) + f"] mod {self.p}"

    def parse(self, s: str) -> Fq:
        s = s.strip()
        m = re.fullmatch(r"\[([-\d,\s]*)\]\s*(?:mod\s*(\d+))?", s)
        if m:
            parts = [t for t in m.group(1).split(",") if t.strip()]
            return Fq([int(t) for t in parts], self)
        m = re.fullmatch(r"([+-]?\d+)\s*(?:mod\s*(\d+))?", s)
        if m:
            return self(int(m.group(1)))
        raise FieldError(f"cannot parse {s!r} as an element of {self.name}")


@dataclass(frozen=True)
class Rationals:
    name = "Q"
    char = 0
    finite = False

    def __call__(self, x) -> Fraction:
        if isinstance(x, Gauss):
            if x.im:
                raise FieldMismatch("non-real Gaussian number given to Q")
            return x.re
        if isinstance(x, (Fp, Fq)):
            raise FieldMismatch("finite-field element given to Q")
        return Fraction(x)

    zero = property(lambda self: Fraction(0))
    one = property(lambda self: Fraction(1))

    def is_square(self, x) -> bool:
        from .squareclass import sq_classify
        return sq_classify(self(x), self).is_trivial

    def random(self, rng: random.Random, nonzero: bool = False, height: int = 5) -> Fraction:
        while True:
            x = Fraction(rng.randint(-height, height), rng.randint(1, 3))
            if x or not nonzero:
                return x

    def fmt(self, x) -> str:
        return str(self(x))

    def parse(self, s: str) -> Fraction:
        s = s.strip()
        if not re.fullmatch(_RAT, s):
            raise FieldError(f"cannot parse {s!r} as a rational")
        return Fraction(s)


@dataclass(frozen=True)
class GaussianRationals:
    name = "Q(i)"
    char = 0
    finite = False

    def __call__(self, x) -> Gauss:
        if isinstance(x, Gauss):
            return x
        if isinstance(x, (Fp, Fq)):
            raise FieldMismatch("finite-field element given to Q(i)")
        return Gauss(x, 0)

    zero = property(lambda self: Gauss(0))
    one = property(lambda self: Gauss(1))

    def is_square(self, x) -> bool:
        from .squareclass import sq_classify
        return sq_classify(self(x), self).is_trivial

    def random(self, rng: random.Random, nonzero: bool = False, height: int = 3) -> Gauss:
        while True:
            z = Gauss(Fraction(rng.randint(-height, height), rng.randint(1, 2)),
                      Fraction(rng.randint(-height, height), rng.randint(1, 2)))
            if z or not nonzero:
                return z

    def fmt(self, x) -> str:
        return format_gauss(self(x))

    def parse(self, s: str) -> Gauss:
        """Accepts "a/b+c/d*i" and the usual shorthands ("1+i", "-i", "3/2", "(-2-3i)/2")."""
        t = s.replace(" ", "")
        m = re.fullmatch(r"\((.*)\)/(\d+)", t)
        if m:
            return self.parse(m.group(1)) / int(m.group(2))
        if not t:
            raise FieldError("empty scalar")
        terms = re.findall(r"[+-]?[^+-]+", t)
        if "".join(terms) != t:
            raise FieldError(f"cannot parse {s!r} as a Gaussian rational")
        z = Gauss(0)
        for term in terms:
            if term.endswith("i"):
                coef = term[:-1].rstrip("*")
                if coef in ("", "+"):
                    c = Fraction(1)
                elif coef == "-":
                    c = Fraction(-1)
                elif re.fullmatch(_RAT, coef):
                    c = Fraction(coef)
                else:
                    raise FieldError(f"bad imaginary term {term!r} in {s!r}")
                z = z + Gauss(0, c)
            elif re.fullmatch(_RAT, term):
                z = z + Gauss(Fraction(term))
            else:
                raise FieldError(f"bad term {term!r} in {s!r}")
        return z


QQ = Rationals()
QQi = GaussianRationals()

GroundField = PrimeField | ExtensionField | Rationals | GaussianRationals


def field_of(x) -> GroundField:
    """Infer the ground field of a bare scalar (ints and Fractions are rational)."""
    if isinstance(x, Fp):
        return PrimeField(x.p)
    if isinstance(x, Fq):
        return x.F
    if isinstance(x, Gauss):
        return QQi
    if isinstance(x, (int, Fraction)):
        return QQ
    raise FieldError(f"no ground field for {type(x).__name__}")


def parse_field(spec: str) -> GroundField:
    """"Q", "Q(i)", "F13", "F5^2" (or "GF(13)")."""
    t = spec.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return QQ
    if t in ("Q(i)", "QQi", "Qi"):
        return QQi
    m = re.fullmatch(r"(?:F_?|GF\()(\d+)(?:\^(\d+))?\)?", t)
    if m:
        p = int(m.group(1))
        s = int(m.group(2) or 1)
        return PrimeField(p) if s == 1 else ExtensionField.default(p, s)
    raise FieldError(f"unknown field {spec!r}")
