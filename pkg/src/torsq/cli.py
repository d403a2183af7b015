"""Command-line front end: ``torsq <subcommand> [options]``.

Records go to stdout (or ``--out DIR/records.jsonl``) as JSON lines,
followed by one summary object.  With ``--out`` the summary figures are
rendered into the same directory.

Exit status: 0 when every record passes, 1 when some check fails, 2 on
malformed input.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import hyperell as H
from . import q8, suites
from .data import InputError, fixture_path, load_curve
from .fields import FieldError
from .report import Sink, record_ok, summarize
from .surface import SurfaceError

VERSION = "0.1.0"


class UsageError(InputError):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--field", help="comma-separated fields, e.g. Q,F13,Q(i)")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $TORSQ_JOBS or 1)")
    p.add_argument("--bound-picard", type=int, default=300000, help="largest Pic^0 to enumerate")
    p.add_argument("--alpha-surjectivity", choices=("order4", "nontrivial"), default="order4")
    p.add_argument("--out", help="directory for records.jsonl, summary.json and figures")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="torsq", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"torsq {VERSION}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("rt-fibered", help="torsion class of a genus-2 mapping torus from a .rep file")
    p.add_argument("rep", nargs="*", help=".rep files (default: the two bundled examples)")
    _common(p)

    p = sub.add_parser("rt-circle", help="spinor route vs chain route on the circle")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--maxdim", type=int, default=6)
    _common(p)

    p = sub.add_parser("spinor", help="spinor-norm property suite")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--maxdim", type=int, default=8)
    _common(p)

    p = sub.add_parser("complex-check", help="random symmetric-complex identities")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--suite", choices=("abc", "chi12", "both"), default="both")
    p.add_argument("--maxdim", type=int, default=None)
    _common(p)

    p = sub.add_parser("q8-verify", help="all admissible characters on one curve")
    p.add_argument("--p", type=int, help="prime")
    p.add_argument("--q-poly", help="coefficients of the even octic f with f(x,z) + y^2 = 0, x^8 first")
    p.add_argument("--curve", help="a .curve file instead of --p/--q-poly")
    _common(p)

    p = sub.add_parser("q8-search", help="sweep quartics over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sweep", choices=("full", "paper"), default="full")
    p.add_argument("--sample", type=int, default=None, help="random subset of this size (uses --seed)")
    _common(p)

    p = sub.add_parser("paper-suite", help="the bundled worked examples and example curves")
    p.add_argument("--with-sweep", action="store_true", help="also run the full sweep at p = 5")
    _common(p)
    return ap


def _jobs(args) -> int:
    return args.jobs or q8.default_jobs()


def _fields(args, default: str):
    try:
        return suites.field_list(args.field or default)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- subcommands

def cmd_rt_fibered(args, sink):
    paths = args.rep or [str(fixture_path(n)) for n in ("appc_example1.rep", "appc_example2.rep")]
    for path in paths:
        sink.emit(suites.fibered_record(path))


def cmd_rt_circle(args, sink):
    fields = _fields(args, suites.DEFAULT_FIELDS["circle"])
    for F in fields:
        rng = random.Random(f"circle:{F.name}:{args.seed}")
        for rec in suites.circle_records(F, args.count, rng, args.maxdim):
            if F.char:
                rec["informational"] = True
            sink.emit(rec)


def cmd_spinor(args, sink):
    for F in _fields(args, suites.DEFAULT_FIELDS["spinor"]):
        rng = random.Random(f"spinor:{F.name}:{args.seed}")
        for rec in suites.spinor_records(F, args.count, rng, args.maxdim):
            sink.emit(rec)


def cmd_complex_check(args, sink):
    names = ("abc", "chi12") if args.suite == "both" else (args.suite,)
    for name in names:
        for F in _fields(args, suites.DEFAULT_FIELDS[name]):
            rng = random.Random(f"{name}:{F.name}:{args.seed}")
            fn = suites.abc_records if name == "abc" else suites.chi12_records
            kw = {"maxdim": args.maxdim} if args.maxdim else {}
            for rec in fn(F, args.count, rng, **kw):
                sink.emit(rec)


def _quartic_from_args(args):
    if args.curve:
        cf = load_curve(args.curve)
        return cf.p, q8.quartic_from_form(cf.p, cf.form)
    if args.p is None or args.q_poly is None:
        raise UsageError("give --curve or both --p and --q-poly")
    try:
        form = [int(x) for x in args.q_poly.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"--q-poly: cannot read {args.q_poly!r}") from None
    return args.p, q8.quartic_from_form(args.p, form)


def _emit_curve(sink, p, Q, args):
    reports = q8.verify_curve(p, Q, args.alpha_surjectivity, args.bound_picard)
    for r in reports:
        sink.emit(r.to_json())
    return reports


def cmd_q8_verify(args, sink):
    try:
        p, Q = _quartic_from_args(args)
    except q8.Q8Error as exc:
        raise UsageError(str(exc)) from None
    _emit_curve(sink, p, Q, args)


def cmd_q8_search(args, sink):
    p = args.p
    if args.sweep == "paper":
        if p not in q8.PAPER_FORMS:
            raise UsageError(f"no bundled curve over F_{p}")
        quartics = [q8.paper_quartic(p)]
    else:
        quartics = q8.admissible_quartics(p)
        if args.sample is not None:
            rng = random.Random(f"sweep:{p}:{args.seed}")
            quartics = sorted(rng.sample(quartics, min(args.sample, len(quartics))),
                              key=lambda Q: tuple(reversed(Q)))
    for Q, recs, err in q8.sweep(p, quartics, _jobs(args), args.alpha_surjectivity, args.bound_picard):
        if err:
            sink.emit({"curve": f"F{p}:Q=" + ",".join(map(str, Q)), "skipped": err, "ok": True})
        for rec in recs:
            sink.emit(rec)


def cmd_paper_suite(args, sink):
    for rec in suites.paper_fibered_records():
        sink.emit(rec)
    for p in sorted(q8.PAPER_FORMS):
        reports = _emit_curve(sink, p, q8.paper_quartic(p), args)
        witness = any(r.central and r.central_sqclass != 1 and r.pairing == 1 for r in reports)
        agree = all(r.agrees for r in reports)
        sink.emit({"suite": "paper-curve", "field": f"F{p}", "instances": len(reports),
                   "witness": witness, "all_agree": agree, "ok": witness and agree})
    if args.with_sweep:
        for Q, recs, err in q8.sweep(5, None, _jobs(args), args.alpha_surjectivity, args.bound_picard):
            for rec in recs:
                sink.emit(rec)


COMMANDS = {
    "rt-fibered": cmd_rt_fibered,
    "rt-circle": cmd_rt_circle,
    "spinor": cmd_spinor,
    "complex-check": cmd_complex_check,
    "q8-verify": cmd_q8_verify,
    "q8-search": cmd_q8_search,
    "paper-suite": cmd_paper_suite,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    sink = Sink(args.out)
    t0 = time.perf_counter()
    try:
        COMMANDS[args.cmd](args, sink)
    except (InputError, FieldError, SurfaceError, H.HyperellError, q8.Q8Error, OSError) as exc:
        print(f"torsq: error: {exc}", file=sys.stderr)
        return 2
    config = {k: v for k, v in vars(args).items() if k != "out"}
    summary = summarize(sink.records, version=VERSION, command=args.cmd, config=config,
                        seconds=round(time.perf_counter() - t0, 3))
    sink.close(summary)
    return 0 if all(record_ok(r) for r in sink.records) else 1


if __name__ == "__main__":
    sys.exit(main())
