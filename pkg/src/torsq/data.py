"""Loaders for the small text formats used by the fixtures and the CLI.

A ``.rep`` file holds ``key: value`` lines (``field``, ``twist`` and the
first two also accept a space instead of the colon).  Matrices are written
row by row with ``|`` between rows and whitespace between entries.  Keys
starting with ``expect.`` carry reference values.

A ``.curve`` file holds ``p <prime>`` and ``form <9 integers>``, the even
binary octic f with f(x, z) + y^2 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from . import linalg as la
from .fields import FieldError, parse_field
from .surface import SurfaceError, SurfaceRep, TwistedSystem, parse_twist


class InputError(ValueError):
    def __init__(self, msg: str, path=None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line else f"{path}: "
        super().__init__(where + msg)
        self.path, self.line = path, line


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("torsq") / "fixtures" / name))


def list_fixtures() -> list[str]:
    return sorted(p.name for p in resources.files("torsq").joinpath("fixtures").iterdir()
                  if p.name.endswith((".rep", ".curve")))


def _records(path):
    text = Path(path).read_text()
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            key, val = line.split(":", 1)
        else:
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise InputError(f"expected 'key: value', got {raw!r}", path, n)
            key, val = parts
        yield n, key.strip(), val.strip()


def parse_matrix(text: str, F):
    rows = [r.split() for r in text.split("|")]
    if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise FieldError("ragged or empty matrix")
    return [[F.parse(x) for x in r] for r in rows]


@dataclass
class RepFile:
    path: str
    system: TwistedSystem
    expect: dict = dc_field(default_factory=dict)

    @property
    def field(self):
        return self.system.field


def load_rep(path) -> RepFile:
    recs = {}
    lines = {}
    for n, k, v in _records(path):
        recs[k] = v
        lines[k] = n
    for key in ("field", "twist", "a1", "b1", "a2", "b2", "conj"):
        if key not in recs:
            raise InputError(f"missing '{key}'", path)
    try:
        F = parse_field(recs["field"])
    except FieldError as exc:
        raise InputError(str(exc), path, lines["field"]) from None
    mats = {}
    for key in ("a1", "b1", "a2", "b2", "conj"):
        try:
            mats[key] = parse_matrix(recs[key], F)
        except (FieldError, ZeroDivisionError) as exc:
            raise InputError(f"{key}: {exc}", path, lines[key]) from None
    try:
        rho = SurfaceRep(F, (mats["a1"], mats["b1"], mats["a2"], mats["b2"]))
        sys = TwistedSystem(rho, parse_twist(recs["twist"]), mats["conj"])
    except SurfaceError as exc:
        raise InputError(str(exc), path) from None
    expect = {}
    for k, v in recs.items():
        if not k.startswith("expect."):
            continue
        name = k[len("expect."):]
        try:
            expect[name] = parse_matrix(v, F) if "|" in v else F.parse(v)
        except (FieldError, ZeroDivisionError) as exc:
            raise InputError(f"{k}: {exc}", path, lines[k]) from None
    return RepFile(str(path), sys, expect)


@dataclass
class CurveFile:
    path: str
    p: int
    form: tuple


def load_curve(path) -> CurveFile:
    p = form = None
    for n, k, v in _records(path):
        if k == "p":
            try:
                p = int(v)
            except ValueError:
                raise InputError(f"bad prime {v!r}", path, n) from None
        elif k == "form":
            try:
                form = tuple(int(x) for x in v.replace(",", " ").split())
            except ValueError:
                raise InputError(f"bad coefficient list {v!r}", path, n) from None
            if len(form) != 9:
                raise InputError("form needs 9 coefficients", path, n)
        else:
            raise InputError(f"unknown key {k!r}", path, n)
    if p is None or form is None:
        raise InputError("need both 'p' and 'form'", path)
    return CurveFile(str(path), p, form)


def matrix_to_strings(M, F):
    return [[F.fmt(x) for x in row] for row in M]


def equal_matrix(A, B) -> bool:
    return la.shape(A) == la.shape(B) and la.equal(A, B)
