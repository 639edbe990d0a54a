"""Command-line interface: stable JSON output for every library operation.

All real numbers are emitted as decimal strings (never binary floats) so
output is stable for golden-file comparison; every payload carries
"schema": "1".  Polyhedron arguments accept a file path or "-" for stdin,
in either JSON or RA1 code form (auto-detected).  Exit codes: 0 success,
1 operation error (with an {"error": ...} payload), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import census as census_mod
from . import core, moves, realization, spectra, volumes
from .lobachevsky import (check_identity_eq8, check_identity_eq9, v_oct,
                          v_tet)

SCHEMA = "1"


def _dec(x, digits: int = 15) -> str:
    """Decimal-string rendering of a real (float or mpf)."""
    import mpmath as mp
    if isinstance(x, mp.mpf):
        return mp.nstr(x, digits, strip_zeros=False)
    return f"{float(x):.{digits}g}"


def _read_poly(arg: str) -> core.AbstractPolyhedron:
    text = sys.stdin.read() if arg == "-" else open(arg).read()
    return core.load_polyhedron(text.strip())


def _emit(payload: dict) -> int:
    payload = {"schema": SCHEMA, **payload}
    json.dump(payload, sys.stdout, indent=None, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def _emit_poly(poly: core.AbstractPolyhedron, fmt: str) -> int:
    if fmt == "text":
        sys.stdout.write(core.canonical_code(poly) + "\n")
        return 0
    doc = json.loads(poly.to_json())
    doc["code"] = core.canonical_code(poly)
    return _emit(doc)


# -- subcommand handlers ---------------------------------------------------

def cmd_validate(args) -> int:
    poly = _read_poly(args.poly)
    rep = core.andreev_check(poly)
    return _emit({
        "valid": rep.valid,
        "kind": poly.kind,
        "ver": poly.V,
        "checks": {
            "at_least_six_faces": rep.cond_faces_ge6,
            "valencies_ok": rep.cond_valency,
            "condition3_ok": rep.cond_triples,
            "no_prismatic_4_circuit": rep.cond_no_prismatic4,
            "steinitz_ok": rep.steinitz_ok,
        },
    })


def cmd_gen(args) -> int:
    if args.family == "antiprism":
        poly = moves.antiprism(args.n)
    elif args.family == "lobell":
        poly = moves.lobell(args.n)
    else:
        poly = moves.tower(args.n, args.k)
    return _emit_poly(poly, args.format)


def cmd_move(args) -> int:
    poly = _read_poly(args.poly)
    desc = moves.MoveDescriptor.from_json(json.loads(args.descriptor))
    return _emit_poly(desc.apply(poly), args.format)


def cmd_census(args) -> int:
    if args.kind == "ideal":
        res = census_mod.ideal_census(args.max_n, jobs=args.jobs)
    else:
        res = census_mod.compact_census(args.max_n, jobs=args.jobs)
    out = {"kind": res.kind,
           "counts": {str(n): c for n, c in res.counts().items()}}
    if not args.summary:
        out["codes"] = {str(n): codes for n, codes in res.by_n.items()}
    if args.provenance:
        out["provenance"] = {
            code: m.provenance for code, m in sorted(res.members.items())}
    return _emit(out)


def cmd_volume(args) -> int:
    if args.family == "antiprism":
        vv = volumes.antiprism_volume(args.n, args.digits)
    elif args.family == "lobell":
        vv = volumes.lobell_volume(args.n, args.digits)
    else:
        vv = volumes.tower_volume(args.n, args.k, args.digits)
    return _emit({"value": _dec(vv.value, vv.digits), "method": vv.method,
                  "digits": vv.digits})


def cmd_realize(args) -> int:
    poly = _read_poly(args.poly)
    pattern = realization.solve_pattern(poly, tol=args.tol)
    realized = realization.realize(poly, pattern)
    vol = realization.volume_from_points(poly, pattern.disk_points,
                                         apex=0, tol=args.tol)
    circles = []
    for c in pattern.circles:
        if c[0] == "line":
            circles.append({"type": "line"})
        else:
            circles.append({"type": "circle",
                            "center": [_dec(c[1]), _dec(c[2])],
                            "radius": _dec(c[3])})
    return _emit({
        "volume": _dec(vol),
        "residual": _dec(pattern.residual, 3),
        "iterations": pattern.iterations,
        "outer_face": pattern.outer_face,
        "circles": circles,
        "positions": [[_dec(z.real), _dec(z.imag)]
                      for z in realized.positions],
    })


def cmd_spectrum(args) -> int:
    if args.kind == "ideal":
        res = census_mod.ideal_census(args.n, jobs=args.jobs)
        vols = {}
        for code, m in res.members.items():
            if m.ver != args.n:
                continue
            poly = core.decode_code(code)
            vols[code] = realization.ideal_volume(poly, tol=args.tol).value
    else:
        res = census_mod.compact_census(args.n, jobs=args.jobs)
        vols = {code: m.volume for code, m in res.members.items()
                if m.ver == args.n}
    row = spectra.spectrum_table(args.kind, args.n, vols)
    return _emit({
        "kind": row.kind, "ver": row.ver, "count": row.count,
        "distinct": row.distinct,
        "min_omega": None if row.min_omega is None else _dec(row.min_omega),
        "max_omega": None if row.max_omega is None else _dec(row.max_omega),
        "partial": row.partial,
    })


def _stats(text: str) -> tuple:
    vt, ot = text.split(":")
    return (float(vt), float(ot))


def cmd_schedule(args) -> int:
    sched = spectra.approximation_schedule(
        args.target, _stats(args.p1), _stats(args.p2),
        eps=args.eps, max_terms=args.max_terms)
    return _emit({
        "target": _dec(sched.target),
        "pairs": [list(p) for p in sched.pairs],
        "predicted": _dec(sched.predicted),
        "p1": [_dec(sched.p1[0]), _dec(sched.p1[1])],
        "p2": [_dec(sched.p2[0]), _dec(sched.p2[1])],
    })


def cmd_classify(args) -> int:
    return _emit({"omega": _dec(args.omega),
                  "kind": args.kind,
                  "region": spectra.classify(args.omega, args.kind)})


def cmd_identity(args) -> int:
    if args.eq == 8:
        v = check_identity_eq8(args.digits)
    else:
        v = check_identity_eq9(args.digits)
    return _emit({"eq": args.eq, "lhs": v.lhs, "rhs": v.rhs,
                  "agree_digits": v.agree_digits, "verdict": v.verdict,
                  "digits": v.digits})


def cmd_constants(args) -> int:
    d = args.digits
    out = [{"name": "v_oct", "digits": d,
            "value": _dec(v_oct(d), d)},
           {"name": "v_tet", "digits": d,
            "value": _dec(v_tet(d), d)}]
    for name, value in volumes.landmark_constants(d).items():
        out.append({"name": name, "digits": d, "value": _dec(value, d)})
    return _emit({"constants": out})


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rightangled",
        description="Right-angled hyperbolic polyhedra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "text"),
                        default="json")

    sp = sub.add_parser("validate", help="combinatorial realizability check")
    sp.add_argument("poly", help="polyhedron file or - for stdin")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("gen", help="generate a seed family member")
    sp.add_argument("family", choices=("antiprism", "lobell", "tower"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    fmt(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("move", help="apply a move descriptor")
    sp.add_argument("poly")
    sp.add_argument("--descriptor", required=True,
                    help="JSON move descriptor")
    fmt(sp)
    sp.set_defaults(func=cmd_move)

    sp = sub.add_parser("census", help="exhaustive enumeration")
    sp.add_argument("--kind", choices=("ideal", "compact"), required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--summary", action="store_true")
    sp.add_argument("--provenance", action="store_true")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("volume", help="closed-form family volume")
    sp.add_argument("--family", choices=("antiprism", "lobell", "tower"),
                    required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--digits", type=int, default=15)
    sp.set_defaults(func=cmd_volume)

    sp = sub.add_parser("realize", help="circle pattern + realized volume")
    sp.add_argument("poly")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("spectrum", help="normalized-volume table row")
    sp.add_argument("--kind", choices=("ideal", "compact"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("schedule", help="density gluing schedule")
    sp.add_argument("--target", type=float, required=True)
    sp.add_argument("--p1", required=True, help="ver_tilde:omega_tilde")
    sp.add_argument("--p2", required=True, help="ver_tilde:omega_tilde")
    sp.add_argument("--eps", type=float, default=1e-4)
    sp.add_argument("--max-terms", type=int, default=40)
    sp.set_defaults(func=cmd_schedule)

    sp = sub.add_parser("classify", help="spectrum region of an omega")
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--kind", choices=("ideal", "compact"), required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("identity", help="check a printed volume identity")
    sp.add_argument("--eq", type=int, choices=(8, 9), required=True)
    sp.add_argument("--digits", type=int, default=None)
    sp.set_defaults(func=cmd_identity)

    sp = sub.add_parser("constants", help="v_oct, v_tet and landmarks")
    sp.add_argument("--digits", type=int, default=15)
    sp.set_defaults(func=cmd_constants)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "identity" and args.digits is None:
        args.digits = 50 if args.eq == 8 else 30
    try:
        return args.func(args)
    except (core.PolyhedronError, moves.MoveError, ValueError,
            RuntimeError, OSError, json.JSONDecodeError) as exc:
        json.dump({"schema": SCHEMA,
                   "error": {"code": type(exc).__name__,
                             "message": str(exc)}},
                  sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
