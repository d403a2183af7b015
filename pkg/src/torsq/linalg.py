"""Exact dense linear algebra over any of the supported ground fields.

Matrices are lists of rows.  Vectors are plain lists and are treated as
columns.  The field object is passed explicitly so that empty and zero
matrices are unambiguous.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .fields import Fp

Matrix = list


def zeros(n, m, F):
    return [[F.zero for _ in range(m)] for _ in range(n)]


def identity(n, F):
    M = zeros(n, n, F)
    for i in range(n):
        M[i][i] = F.one
    return M


def coerce(M, F):
    return [[F(x) for x in row] for row in M]


def shape(M):
    return len(M), (len(M[0]) if M else 0)


def transpose(M):
    return [list(col) for col in zip(*M)]


def _all_fractions(M) -> bool:
    return all(type(x) is Fraction for row in M for x in row)


def _matmul_rational(A, B):
    """Rational product through integer arithmetic: scale rows of A and columns of B."""
    ra = [lcm(*(x.denominator for x in row)) for row in A]
    Bt = list(zip(*B))
    cb = [lcm(*(x.denominator for x in col)) for col in Bt]
    Ai = [[x.numerator * (d // x.denominator) for x in row] for row, d in zip(A, ra)]
    Bi = [[x.numerator * (d // x.denominator) for x in col] for col, d in zip(Bt, cb)]
    return [[Fraction(sum(a * b for a, b in zip(row, col) if a and b), da * db)
             for col, db in zip(Bi, cb)] for row, da in zip(Ai, ra)]


def _prime_of(M):
    """p when every entry is an F_p residue for one p, else None."""
    p = None
    for row in M:
        for x in row:
            if type(x) is not Fp or (p is not None and x.p != p):
                return None
            p = x.p
    return p


def _matmul_mod(A, B, p):
    Bt = [[x.v for x in col] for col in zip(*B)]
    return [[Fp(sum(a * b for a, b in zip(r, col)), p) for col in Bt]
            for r in ([x.v for x in row] for row in A)]


def matmul(A, B, F=None):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    if _all_fractions(A) and _all_fractions(B):
        return _matmul_rational(A, B)
    p = _prime_of(A)
    if p is not None and _prime_of(B) == p:
        return _matmul_mod(A, B, p)
    Bt = list(zip(*B))
    out = []
    for row in A:
        r = []
        for col in Bt:
            s = None
            for a, b in zip(row, col):
                if a and b:
                    s = a * b if s is None else s + a * b
            r.append(s if s is not None else (F.zero if F else row[0] * 0))
        out.append(r)
    return out


def matvec(A, v, F):
    if v and all(type(x) is Fraction for x in v) and _all_fractions(A):
        return [row[0] for row in _matmul_rational(A, [[x] for x in v])]
    if v and all(type(x) is Fp for x in v):
        p = _prime_of(A)
        if p is not None and all(x.p == p for x in v):
            return [row[0] for row in _matmul_mod(A, [[x] for x in v], p)]
    return [sum((a * b for a, b in zip(row, v) if a and b), F.zero) for row in A]


def madd(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def msub(A, B):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mscale(A, c):
    return [[c * a for a in r] for r in A]


def mneg(A):
    return [[-a for a in r] for r in A]


def mpow(A, e, F):
    R = identity(len(A), F)
    B = A
    while e:
        if e & 1:
            R = matmul(R, B, F)
        B = matmul(B, B, F)
        e >>= 1
    return R


def equal(A, B):
    return len(A) == len(B) and all(
        len(r) == len(s) and all(a == b for a, b in zip(r, s)) for r, s in zip(A, B))


def is_zero(A):
    return all(not a for r in A for a in r)


def rref(M, F):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = [list(r) for r in M]
    n, m = shape(R)
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.one / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(n):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return R, pivots


def rank(M, F):
    if not M or not M[0]:
        return 0
    return len(rref(M, F)[1])


def nullspace(M, F, ncols=None):
    """Basis (list of column vectors) of {x : M x = 0}."""
    m = ncols if ncols is not None else shape(M)[1]
    if not M:
        return [[F.one if i == j else F.zero for i in range(m)] for j in range(m)]
    R, piv = rref(M, F)
    free = [c for c in range(m) if c not in piv]
    basis = []
    for f in free:
        v = [F.zero] * m
        v[f] = F.one
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def column_space(M, F):
    """Basis of the column span, as a list of column vectors taken from M."""
    if not M or not M[0]:
        return []
    _, piv = rref(M, F)
    return [[row[c] for row in M] for c in piv]


def span_basis(vectors, F):
    """Echelon basis of the span of some vectors."""
    if not vectors:
        return []
    R, piv = rref(vectors, F)
    return R[:len(piv)]


def det(M, F):
    n = len(M)
    if n == 0:
        return F.one
    A = [list(r) for r in M]
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c]
        inv = F.one / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def inverse(M, F):
    n = len(M)
    aug = [list(r) + e for r, e in zip(M, identity(n, F))]
    R, piv = rref(aug, F)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def solve(A, b, F):
    """One solution x of A x = b, or None."""
    n, m = shape(A)
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug, F)
    if m in piv:
        return None
    x = [F.zero] * m
    for i, c in enumerate(piv):
        x[c] = R[i][m]
    return x


def solve_matrix(A, B, F):
    """X with A X = B (columnwise), or None."""
    cols = []
    for col in transpose(B):
        x = solve(A, col, F)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


def _charpoly_int(A):
    """Berkowitz on an integer matrix; coefficients low degree first."""
    n = len(A)
    vect = [1, -A[0][0]]
    for r in range(1, n):
        R = A[r][:r]
        v = [A[i][r] for i in range(r)]
        Ab = [row[:r] for row in A[:r]]
        col = [1, -A[r][r]]
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(a * b for a, b in zip(row, v)) for row in Ab]
        vect = [sum(col[i - j] * vect[j] for j in range(min(i + 1, r + 1)) if i - j < len(col))
                for i in range(r + 2)]
    return list(reversed(vect))


def charpoly(A, F):
    """Coefficients (low degree first) of det(x I - A), by Berkowitz's division-free recursion."""
    n = len(A)
    if n == 0:
        return [F.one]
    if _all_fractions(A):
        # det(xI - A) = D^-n det(D x I - D A) with D A integral
        D = lcm(*(x.denominator for row in A for x in row))
        B = [[int(x * D) for x in row] for row in A]
        ci = _charpoly_int(B)
        return [Fraction(c, D ** (n - k)) for k, c in enumerate(ci)]
    # vect holds coefficients high degree first
    vect = [F.one, -A[0][0]]
    for r in range(1, n):
        # Toeplitz column for the leading (r+1) x (r+1) block
        R = [A[r][j] for j in range(r)]          # row
        C = [A[i][r] for i in range(r)]          # column
        Ab = [row[:r] for row in A[:r]]
        a = A[r][r]
        col = [F.one, -a]
        v = C
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(R, v)), F.zero))
            v = matvec(Ab, v, F)
        # multiply Toeplitz(col) (size (r+2) x (r+1)) by vect
        new = []
        for i in range(r + 2):
            s = F.zero
            for j in range(min(i + 1, r + 1)):
                if i - j < len(col):
                    s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return list(reversed(vect))


def poly_eval(coeffs, x, F):
    r = F.zero
    for c in reversed(coeffs):
        r = r * x + c
    return r


def restrict(A, basis, F):
    """Matrix of A on the invariant subspace spanned by basis (columns), in that basis."""
    if not basis:
        return []
    B = transpose(basis)
    AB = matmul(A, B, F)
    X = solve_matrix(B, AB, F)
    if X is None:
        raise ValueError("subspace is not invariant")
    return X
