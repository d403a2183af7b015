"""Dense univariate polynomials over a prime field F_p.

A polynomial is a list of ints in [0, p), lowest degree first, with no
trailing zeros; the zero polynomial is [].  Everything here is written for
small p and small degree (curves of genus <= 4 over p < 100).
"""

from __future__ import annotations

import random


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def norm(a, p: int) -> list[int]:
    return trim([c % p for c in a])


def deg(a: list[int]) -> int:
    return len(a) - 1


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] = (r[i] + c) % p
    return trim(r)


def sub(a, b, p):
    n = max(len(a), len(b))
    r = [0] * n
    for i, c in enumerate(a):
        r[i] = c
    for i, c in enumerate(b):
        r[i] = (r[i] - c) % p
    return trim(r)


def neg(a, p):
    return [(-c) % p for c in a]


def scale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [(x * c) % p for x in a]


def mul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return trim([c % p for c in r])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = (c * inv) % p
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(q), trim([c % p for c in a[:db]])


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def quo(a, b, p):
    return divmod_(a, b, p)[0]


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def gcd(a, b, p):
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def inv_mod(a, m, p):
    g, s, _ = xgcd(a, m, p)
    if g != [1]:
        raise ZeroDivisionError("not invertible modulo m")
    return mod(s, m, p)


def evaluate(a, x, p):
    r = 0
    for c in reversed(a):
        r = (r * x + c) % p
    return r


def derivative(a, p):
    return trim([(i * c) % p for i, c in enumerate(a)][1:])


def powmod(a, e, m, p):
    r = [1]
    b = mod(a, m, p)
    while e:
        if e & 1:
            r = mod(mul(r, b, p), m, p)
        b = mod(mul(b, b, p), m, p)
        e >>= 1
    return r


def compose(a, b, p):
    """a(b(x))."""
    r = []
    for c in reversed(a):
        r = add(mul(r, b, p), [c % p] if c % p else [], p)
    return r


def is_squarefree(a, p):
    return deg(gcd(a, derivative(a, p), p)) == 0


def is_irreducible(a, p):
    a = norm(a, p)
    n = deg(a)
    if n <= 0:
        return False
    a = monic(a, p)
    x = [0, 1]
    h = x
    for i in range(1, n // 2 + 1):
        h = powmod(h, p, a, p)
        if deg(gcd(sub(h, x, p), a, p)) > 0:
            return False
    return True


def first_irreducible(n, p):
    """Lexicographically least monic irreducible of degree n (coefficients high-first)."""
    for k in range(p ** n):
        digits = []
        for _ in range(n):
            digits.append(k % p)
            k //= p
        f = digits + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError


def roots(a, p):
    """Distinct roots in F_p, sorted."""
    return [x for x in range(p) if evaluate(a, x, p) == 0]


def _distinct_degree(f, p):
    """Split squarefree monic f into (d, product of its degree-d factors)."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, x, p), f, p)
        if deg(g) > 0:
            out.append((d, g))
            f = quo(f, g, p)
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((deg(f), f))
    return out


def _equal_degree(f, d, p, rng):
    n = deg(f)
    if n == d:
        return [f]
    while True:
        r = trim([rng.randrange(p) for _ in range(n)])
        if deg(r) < 1:
            continue
        g = powmod(r, (p ** d - 1) // 2, f, p)
        g = gcd(sub(g, [1], p), f, p)
        if 0 < deg(g) < n:
            return _equal_degree(g, d, p, rng) + _equal_degree(quo(f, g, p), d, p, rng)


def factor(a, p):
    """Monic irreducible factorisation as a sorted list of (factor, multiplicity)."""
    a = monic(norm(a, p), p)
    if deg(a) < 1:
        return []
    rng = random.Random(0)
    res: dict[tuple, int] = {}

    def rec(f, mult):
        if deg(f) < 1:
            return
        g = gcd(f, derivative(f, p), p)
        if deg(g) == 0:
            for d, part in _distinct_degree(f, p):
                for fac in _equal_degree(part, d, p, rng):
                    key = tuple(fac)
                    res[key] = res.get(key, 0) + mult
            return
        if not derivative(f, p):
            # f is a p-th power
            root = [f[i] for i in range(0, len(f), p)]
            rec(root, mult * p)
            return
        sq = quo(f, g, p)
        rec(sq, mult)
        rec(g, mult)

    # Yun-style peeling: rec(f) handles f = sq * g with overlapping factors
    rec(a, 1)
    return sorted(((list(k), m) for k, m in res.items()), key=lambda t: (len(t[0]), t[0][::-1]))


def monic_polys(n, p):
    """All monic polynomials of exact degree n."""
    for k in range(p ** n):
        digits = []
        for _ in range(n):
            digits.append(k % p)
            k //= p
        yield digits + [1]


def irreducibles(n, p):
    """Monic irreducibles of degree n, in the order of ``monic_polys``.

    Small degrees use a sieve: every reducible monic polynomial is an
    irreducible factor of degree k <= n/2 times a monic cofactor.
    """
    if n > 4 or p ** n > 2_000_000:
        return [f for f in monic_polys(n, p) if is_irreducible(f, p)]
    reducible = set()
    for k in range(1, n // 2 + 1):
        cofactors = [tuple(c) for c in monic_polys(n - k, p)]
        for f in irreducibles(k, p):
            for g in cofactors:
                reducible.add(tuple(mul(f, list(g), p)))
    return [f for f in monic_polys(n, p) if tuple(f) not in reducible]


def resultant(a, b, p):
    """Res(a, b) by the Euclidean algorithm."""
    a, b = norm(a, p), norm(b, p)
    if not a or not b:
        return 0
    out = 1
    while True:
        n, m = deg(a), deg(b)
        if m == 0:
            return out * pow(b[0], n, p) % p
        r = mod(a, b, p)
        if not r:
            return 0
        if n % 2 and m % 2:
            out = -out
        out = out * pow(b[-1], n - deg(r), p) % p
        a, b = b, r


def is_square_mod(a, m, p):
    """Is a a square in F_p[x]/(m), m irreducible?

    The quadratic character of F_p[x]/(m) is the Legendre symbol of the
    norm, and the norm of a is Res(m, a) for monic m.
    """
    a = mod(a, m, p)
    if not a:
        return True
    return pow(resultant(m, a, p), (p - 1) // 2, p) == 1


def sqrt_mod(a, m, p):
    """A square root of a in the field F_p[x]/(m) (m irreducible), or None (Tonelli-Shanks)."""
    a = mod(a, m, p)
    if not a:
        return []
    if not is_square_mod(a, m, p):
        return None
    q = p ** deg(m)
    s, t = 0, q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    # least non-square in a fixed enumeration, for reproducibility
    z = None
    n = deg(m)
    for k in range(1, q):
        c, digits = k, []
        for _ in range(n):
            digits.append(c % p)
            c //= p
        cand = trim(digits)
        if not is_square_mod(cand, m, p):
            z = cand
            break
    c = powmod(z, t, m, p)
    x = powmod(a, (t + 1) // 2, m, p)
    b = powmod(a, t, m, p)
    r = s
    while b != [1]:
        i, bb = 0, b
        while bb != [1]:
            bb = mod(mul(bb, bb, p), m, p)
            i += 1
        w = c
        for _ in range(r - i - 1):
            w = mod(mul(w, w, p), m, p)
        x = mod(mul(x, w, p), m, p)
        c = mod(mul(w, w, p), m, p)
        b = mod(mul(b, c, p), m, p)
        r = i
    return x
