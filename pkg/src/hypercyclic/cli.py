"""Command-line front end.

Exit codes: 0 ok (an "unknown" verdict included), 2 malformed input,
3 dimension mismatch, 4 term overflow, 5 operator outside the scope of the
requested construction, 6 witness tolerance not reached.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from gmpy2 import mpc, mpfr

from . import serialize as ser
from .classify import classify_operator
from .fnalg import DimensionError, ExpPoly, Polydisc, TermOverflowError, evaluate, norm_upper_bound
from .ops import AdmissibilityError, DiagonalOperator, DirectionalOperator, apply
from .scalar import DEFAULT_PREC, ScalarParseError, precision, render_real, to_mpfr
from .witness import (
    OutOfScopeError,
    SeparationError,
    WitnessUnreachable,
    non_hc_certificate,
    proof_eps,
    transitivity_witness_expansive,
    transitivity_witness_translation,
)

EXIT_OK, EXIT_PARSE, EXIT_DIM, EXIT_OVERFLOW, EXIT_SCOPE, EXIT_UNREACHABLE = 0, 2, 3, 4, 5, 6


class _Exit(Exception):
    def __init__(self, code: int, message: str = "", payload=None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc}")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _operator(path: str, prec: int):
    return ser.operator_from_json(_load_json(path), prec)


def _function(path: str, prec: int) -> ExpPoly:
    return ser.exppoly_from_json(_load_json(path), prec)


def _check_dim(T, *fs):
    for f in fs:
        if f.dim != T.dim:
            raise DimensionError(f"function of dimension {f.dim} for operator of dimension {T.dim}")


# ----------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    T = _operator(args.spec, args.precision)
    c = classify_operator(T)
    _emit(ser.dumps(ser.classification_to_json(c)), args.out)
    return EXIT_OK


def cmd_orbit(args) -> int:
    T = _operator(args.spec, args.precision)
    f = _function(args.function, args.precision)
    _check_dim(T, f)
    point = None
    if args.point is not None:
        try:
            raw = json.loads(args.point)
        except json.JSONDecodeError as exc:
            raise _Exit(EXIT_PARSE, f"bad --point: {exc}")
        if not isinstance(raw, list):
            raise _Exit(EXIT_PARSE, "--point must be a JSON list")
        with precision(args.precision):
            point = tuple(ser._scalar(x, args.precision) for x in raw)
        if len(point) != T.dim:
            raise DimensionError(f"point of length {len(point)} for dimension {T.dim}")
    K = Polydisc.ball(T.dim, 1, prec=args.precision)
    header = "n,term_count,norm_upper_bound" + (",abs_value" if point is not None else "")
    rows = [header]

    def row(n, g):
        cells = [str(n), str(len(g.terms)), render_real(norm_upper_bound(g, K))]
        if point is not None:
            with precision(args.precision):
                cells.append(render_real(abs(evaluate(g, point))) if not g.is_zero() else "0")
        return ",".join(cells)

    g = f
    code = EXIT_OK
    for n in range(args.nmax + 1):
        try:
            if n:
                g = apply(T, g)
        except TermOverflowError as exc:
            rows.append(f"{n},overflow,{exc.partial_size}" + ("," if point is not None else ""))
            code = EXIT_OVERFLOW
            break
        rows.append(row(n, g))
    _emit("\n".join(rows) + "\n", args.out)
    return code


def _targets(args):
    obj = _load_json(args.targets)
    f = ser.exppoly_from_json(ser._need(obj, "f"), args.precision)
    g = ser.exppoly_from_json(ser._need(obj, "g"), args.precision)
    K = ser.polydisc_from_json(ser._need(obj, "K"), args.precision)
    n = obj.get("n")
    if n is not None and (isinstance(n, bool) or not isinstance(n, int)):
        raise ser.SpecError("n must be an integer")
    return f, g, K, n, obj


def _scope_exit(T, message):
    c = classify_operator(T) if isinstance(T, (DiagonalOperator, DirectionalOperator)) else None
    payload = {"error": "out-of-scope", "message": message,
               "classification": ser.classification_to_json(c) if c is not None else None}
    return _Exit(EXIT_SCOPE, message, payload)


def cmd_witness(args) -> int:
    T = _operator(args.spec, args.precision)
    f, g, K, n, obj = _targets(args)
    _check_dim(T, f, g)
    if K.dim != T.dim:
        raise DimensionError("polydisc dimension differs from the operator's")
    if not isinstance(T, DiagonalOperator):
        raise _scope_exit(T, "witnesses are built for diagonal operators only")
    c = classify_operator(T)
    translation = [i for i in T.unit_coords if not T.b_is_zero(i)]
    try:
        if c.case_label == "3a" and any(T.alpha2):
            w = transitivity_witness_expansive(T, f, g, K, args.eps, n_max=args.nmax)
        elif translation and any(T.alpha) and c.hypercyclic == "yes":
            ce = obj.get("cauchy_eps")
            if ce is not None:
                ce = [ser._real(x, args.precision) for x in ce]
            if n is None:
                with precision(args.precision):
                    eps_c = ce or [mpfr(1) / 2] * T.dim
                    l = translation[0]
                    n = 1
                    while not n * abs(T.b[l]) > 2 * K.radii[l] + 2 * eps_c[l]:
                        n += 1
            w = transitivity_witness_translation(T, f, g, K, args.eps, n, degree_cap=args.degree_cap,
                                                 samples=obj.get("samples"), cauchy_eps=ce)
        else:
            raise OutOfScopeError(f"no witness construction for case {c.case_label}", c)
    except OutOfScopeError as exc:
        raise _scope_exit(T, str(exc))
    except WitnessUnreachable as exc:
        report = ser.witness_to_json(exc.best) if exc.best is not None else {}
        report["error"] = str(exc)
        _emit(ser.dumps(report), args.out)
        return EXIT_UNREACHABLE
    report = ser.witness_to_json(w)
    report["classification"] = ser.classification_to_json(c)
    _emit(ser.dumps(report), args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    T = _operator(args.spec, args.precision)
    f = _function(args.function, args.precision)
    _check_dim(T, f)
    if not isinstance(T, DiagonalOperator):
        raise _scope_exit(T, "certificates are built for diagonal operators only")
    radius = ser._real(args.radius, args.precision)
    try:
        cert = non_hc_certificate(T, f, radius, max(args.nmax, 3))
    except OutOfScopeError as exc:
        raise _scope_exit(T, str(exc))
    report = ser.certificate_to_json(cert)
    report["classification"] = ser.classification_to_json(classify_operator(T))
    if args.csv:
        Path(args.csv).write_text(cert.csv())
    _emit(ser.dumps(report), args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from . import selftest

    ok = selftest.run(seed=args.seed, prec=args.precision, stream=sys.stdout)
    return EXIT_OK if ok else 1


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypercyclic", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PREC, help="working precision in bits (>= 64)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="hypercyclicity verdict for an operator spec")
    c.add_argument("spec")
    c.set_defaults(func=cmd_classify)

    o = sub.add_parser("orbit", parents=[common], help="CSV of the orbit T^n f")
    o.add_argument("spec")
    o.add_argument("function")
    o.add_argument("--nmax", type=int, default=10)
    o.add_argument("--point", help='evaluation point as a JSON list, e.g. \'["0"]\'')
    o.set_defaults(func=cmd_orbit)

    w = sub.add_parser("witness", parents=[common], help="transitivity witness for targets f, g on K")
    w.add_argument("spec")
    w.add_argument("targets", help='JSON {"f": ..., "g": ..., "K": ..., "n": optional}')
    w.add_argument("--eps", default="1e-6")
    w.add_argument("--nmax", type=int, default=64)
    w.add_argument("--degree-cap", type=int, default=30)
    w.set_defaults(func=cmd_witness)

    k = sub.add_parser("certify", parents=[common], help="non-hypercyclicity certificate")
    k.add_argument("spec")
    k.add_argument("function")
    k.add_argument("--radius", default="1")
    k.add_argument("--nmax", type=int, default=12)
    k.add_argument("--csv", help="also write (n, orbit_value, cauchy_bound) rows here")
    k.set_defaults(func=cmd_certify)

    s = sub.add_parser("selftest", parents=[common], help="run the built-in consistency checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 64:
        parser.error("--precision must be >= 64")
    if getattr(args, "nmax", 0) < 0:
        parser.error("--nmax must be >= 0")
    random.seed(args.seed)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.payload is not None:
            _emit(ser.dumps(exc.payload), args.out)
        if str(exc):
            print(f"hypercyclic: {exc}", file=sys.stderr)
        return exc.code
    except DimensionError as exc:
        print(f"hypercyclic: dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIM
    except (ser.SpecError, ScalarParseError, AdmissibilityError, SeparationError) as exc:
        print(f"hypercyclic: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TermOverflowError as exc:
        print(f"hypercyclic: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW


if __name__ == "__main__":
    sys.exit(main())
