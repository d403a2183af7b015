"""Seeded randomized drivers shared by the CLI and the test-suite.

Every driver takes a ``random.Random`` and yields one JSON-ready record per
instance with an ``ok`` field.  A fixed seed fixes the instance stream.
"""

from __future__ import annotations

import random
from pathlib import Path

from . import complexes as cx
from . import linalg as la
from . import orth, torsion
from .data import fixture_path, load_rep
from .fields import parse_field
from .squareclass import sq_classify, sq_mul
from .surface import format_twist


def spinor_records(F, count: int, rng: random.Random, maxdim: int = 8):
    """Homomorphism, det(1 - A) agreement and commutator triviality for random pairs."""
    for i in range(count):
        n = 2 * rng.randint(1, maxdim // 2)
        V = orth.random_square_disc_space(F, n, rng)
        A = orth.random_special_orthogonal(V, rng)
        B = orth.random_special_orthogonal(V, rng)
        sA, sB = orth.spinor_norm(A), orth.spinor_norm(B)
        sAB = orth.spinor_norm(A @ B)
        hom = sAB == sq_mul(sA, sB)
        dA = la.det(la.msub(la.identity(n, F), A.mat), F)
        zzz = None if not dA else sq_classify(dA, F) == sA
        comm = A @ B @ A.inverse() @ B.inverse()
        ctriv = orth.spinor_norm(comm).is_trivial
        refl = orth.spinor_norm_by_reflections(A) == sA
        yield {"suite": "spinor", "field": F.name, "i": i, "dim": n,
               "hom": hom, "zzz": zzz, "commutator": ctriv, "reflections": refl,
               "ok": hom and zzz is not False and ctriv and refl}


def _with_fixed_block(F, rng, maxdim):
    """A special orthogonal map with a fixed subspace of random even dimension, in disguise."""
    k = rng.randint(1, maxdim // 2 - 1) if maxdim >= 4 else 1
    n1 = 2 * rng.randint(1, max(1, maxdim // 2 - k))
    V1 = orth.random_square_disc_space(F, n1, rng)
    A1 = orth.random_special_orthogonal(V1, rng)
    G2 = orth.random_square_disc_space(F, 2 * k, rng).gram
    n = n1 + 2 * k
    G = la.zeros(n, n, F)
    M = la.identity(n, F)
    for i in range(n1):
        for j in range(n1):
            G[i][j] = V1.gram[i][j]
            M[i][j] = A1.mat[i][j]
    for i in range(2 * k):
        for j in range(2 * k):
            G[n1 + i][n1 + j] = G2[i][j]
    P = cx.random_invertible(F, n, rng)
    Pi = la.inverse(P, F)
    G = la.matmul(la.matmul(la.transpose(Pi), G, F), Pi, F)
    M = la.matmul(la.matmul(P, M, F), Pi, F)
    return orth.IsometryMap(orth.QuadraticSpace(F, G), M)


def circle_records(F, count: int, rng: random.Random, maxdim: int = 6, fixed_share: float = 0.4):
    """Spinor route against the chain-level route for the circle."""
    for i in range(count):
        if rng.random() < fixed_share:
            A = _with_fixed_block(F, rng, maxdim)
        else:
            V = orth.random_square_disc_space(F, 2 * rng.randint(1, maxdim // 2), rng)
            A = orth.random_special_orthogonal(V, rng)
        h = torsion.fixed_dim(A)
        a = torsion.rt_circle(A)
        b = cx.rt_chain(cx.s1_complex(A))
        yield {"suite": "circle", "field": F.name, "i": i, "dim": A.space.dim, "h": h,
               "spinor_route": str(a), "chain_route": str(b), "ok": a == b}


def abc_records(F, count: int, rng: random.Random, maxdim: int = 6, n: int = 4):
    for i in range(count):
        S = cx.random_strongly_even_skew(F, rng, n=n, maxdim=maxdim)
        rep = cx.verify_abc(S)
        rec = {"suite": "abc", "field": F.name, "i": i, "dims": list(S.base.dims)}
        rec.update(rep.to_json())
        yield rec


def chi12_records(F, count: int, rng: random.Random, maxdim: int = 4):
    for i in range(count):
        S = cx.random_strict_symmetric(F, rng, width=rng.randint(1, 3), maxdim=maxdim)
        C = S.base
        lhs = cx.semicharacteristic(C, 1)
        rhs = sum(C.dim(j) for j in C.degrees if j <= 0) % 2
        yield {"suite": "chi12", "field": F.name, "i": i, "lo": C.lo, "dims": list(C.dims),
               "semichar": lhs, "dim_parity": rhs, "ok": lhs == rhs}


def fibered_record(path) -> dict:
    """Run a .rep file and compare with its expect.* entries."""
    rf = load_rep(path)
    F = rf.field
    op = torsion.cocycle_operator(rf.system)
    res = torsion.rt_fibered(rf.system)
    checks = {"commuting_square": torsion.check_commuting_square(rf.system, op)}
    ex = rf.expect
    if "ttilde" in ex:
        checks["ttilde"] = la.equal(op.tmat, ex["ttilde"])
    if "det_1_minus_ttilde" in ex:
        checks["det_1_minus_ttilde"] = res.det_one_minus_ttilde == ex["det_1_minus_ttilde"]
    if "det_1_minus_minv" in ex:
        checks["det_1_minus_minv"] = res.det_one_minus_minv == ex["det_1_minus_minv"]
    if "det_relator_a1" in ex:
        Ca1 = torsion.relator_coefficients(rf.system.rep)[1]
        checks["det_relator_a1"] = la.det(Ca1, F) == ex["det_relator_a1"]
    if "class" in ex:
        checks["class"] = res.sqclass is not None and res.sqclass == sq_classify(ex["class"], F)
    checks["h1_det_one"] = torsion.h1_determinant(rf.system) == F.one
    out = {"suite": "rt-fibered", "input": Path(path).name, "twist": format_twist(rf.system.twist)}
    out.update(res.to_json())
    out["ttilde"] = [[F.fmt(x) for x in row] for row in op.tmat]
    out["checks"] = checks
    out["ok"] = all(checks.values())
    return out


def paper_fibered_records():
    for name in ("appc_example1.rep", "appc_example2.rep"):
        yield fibered_record(fixture_path(name))


def field_list(spec: str):
    return [parse_field(s) for s in spec.split(",") if s.strip()]


DEFAULT_FIELDS = {"spinor": "F5,F13,F17,Q", "circle": "Q", "abc": "Q,F13,F7", "chi12": "Q,F7"}


def run_named(name: str, fields, count: int, seed: int):
    """Yield records of a named suite over several fields, one seeded stream per field."""
    fn = {"spinor": spinor_records, "circle": circle_records,
          "abc": abc_records, "chi12": chi12_records}[name]
    for F in fields:
        rng = random.Random(f"{name}:{F.name}:{seed}")
        yield from fn(F, count, rng)

