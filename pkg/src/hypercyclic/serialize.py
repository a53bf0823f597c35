"""JSON wire formats.

Complex numbers travel as ``["re", "im"]`` decimal strings with enough digits
to round-trip at the value's precision; reals as single decimal strings.
Field order is fixed so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass

from gmpy2 import mpc, mpfr

from .classify import Classification
from .fnalg import AffineMap, DiagonalAffineMap, DimensionError, ExpPoly, Polydisc, multi_index
from .ops import DiagonalOperator, DirectionalOperator
from .scalar import ScalarParseError, precision, render, render_real, to_mpc, to_mpfr

_MPC = type(mpc(0))
_MPFR = type(mpfr(0))


class SpecError(ValueError):
    """Malformed input document."""


def _need(obj, key, kind=None):
    if not isinstance(obj, dict):
        raise SpecError(f"expected a JSON object, got {type(obj).__name__}")
    if key not in obj:
        raise SpecError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SpecError(f"field {key!r} must be a {kind.__name__}")
    return val


def _scalar(x, prec):
    if isinstance(x, bool) or x is None:
        raise SpecError(f"not a number: {x!r}")
    try:
        return to_mpc(x, prec)
    except ScalarParseError as exc:
        raise SpecError(str(exc)) from exc


def _real(x, prec):
    try:
        return to_mpfr(x, prec)
    except ScalarParseError as exc:
        raise SpecError(str(exc)) from exc


def _index(xs):
    if not isinstance(xs, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in xs):
        raise SpecError(f"multi-index must be a list of integers, got {xs!r}")
    try:
        return multi_index(xs)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


# ----------------------------------------------------------------------------
# ExpPoly, Polydisc, maps


def exppoly_to_json(f: ExpPoly) -> dict:
    return {
        "dim": f.dim,
        "terms": [{"coeff": render(t.coeff), "gamma": [render(g) for g in t.gamma], "beta": list(t.beta)}
                  for t in f.terms],
    }


def exppoly_from_json(obj, prec: int) -> ExpPoly:
    dim = _need(obj, "dim", int)
    terms = _need(obj, "terms", list)
    if dim < 1:
        raise SpecError("dim must be >= 1")
    raw = []
    for t in terms:
        c = _scalar(_need(t, "coeff"), prec)
        beta = _index(_need(t, "beta"))
        gamma = t.get("gamma")
        if gamma is None:
            g = None
        else:
            if not isinstance(gamma, list):
                raise SpecError("gamma must be a list")
            g = tuple(_scalar(x, prec) for x in gamma)
        if len(beta) != dim or (g is not None and len(g) != dim):
            raise DimensionError(f"term of the wrong length in a function of dimension {dim}")
        raw.append((c, g, beta))
    return ExpPoly(dim, raw, prec)


def polydisc_to_json(K: Polydisc) -> dict:
    return {"center": [render(c) for c in K.center], "radii": [render_real(r) for r in K.radii]}


def polydisc_from_json(obj, prec: int) -> Polydisc:
    center = _need(obj, "center", list)
    radii = _need(obj, "radii", list)
    if len(center) != len(radii):
        raise DimensionError("polydisc center and radii lengths differ")
    with precision(prec):
        c = tuple(_scalar(x, prec) for x in center)
        r = tuple(_real(x, prec) for x in radii)
    try:
        return Polydisc(c, r)
    except ValueError as exc:
        if isinstance(exc, DimensionError):
            raise
        raise SpecError(str(exc)) from exc


def affine_to_json(phi) -> dict:
    if isinstance(phi, DiagonalAffineMap):
        return {"lambda": [render(x) for x in phi.lam], "b": [render(x) for x in phi.offset]}
    return {"A": [[render(x) for x in row] for row in phi.matrix], "b": [render(x) for x in phi.offset]}


# ----------------------------------------------------------------------------
# operators


def operator_from_json(obj, prec: int):
    kind = _need(obj, "kind", str)
    if kind == "diagonal":
        lam = _need(obj, "lambda", list)
        b = _need(obj, "b", list)
        alpha = _index(_need(obj, "alpha"))
        if not (len(lam) == len(b) == len(alpha)) or not lam:
            raise DimensionError(f"lambda, b, alpha lengths differ: {len(lam)}, {len(b)}, {len(alpha)}")
        for x in lam + b:
            _scalar(x, prec)
        unit_tol = obj.get("unit_tol")
        return DiagonalOperator.from_values(lam, b, alpha, prec, unit_tol)
    if kind == "directional":
        A = _need(obj, "A", list)
        b = _need(obj, "b", list)
        v = _need(obj, "v", list)
        n = len(b)
        if n == 0 or len(A) != n or len(v) != n or any(not isinstance(r, list) or len(r) != n for r in A):
            raise DimensionError("A must be N x N with b and v of length N")
        for x in [y for r in A for y in r] + b + v:
            _scalar(x, prec)
        if all(_scalar(x, prec) == 0 for x in v):
            raise SpecError("v must be nonzero")
        return DirectionalOperator.from_values(A, b, v, prec)
    raise SpecError(f"unknown operator kind {kind!r}")


def operator_to_json(T) -> dict:
    if isinstance(T, DiagonalOperator):
        return {"kind": "diagonal", "lambda": [render(x) for x in T.lam], "b": [render(x) for x in T.b],
                "alpha": list(T.alpha)}
    return {"kind": "directional", "A": [[render(x) for x in r] for r in T.A], "b": [render(x) for x in T.b],
            "v": [render(x) for x in T.v]}


# ----------------------------------------------------------------------------
# reports


def to_jsonable(x):
    """Render any report value: gmpy2 numbers as strings, containers recursively."""
    if isinstance(x, _MPFR):
        return render_real(x)
    if isinstance(x, _MPC):
        return render(x)
    if isinstance(x, ExpPoly):
        return exppoly_to_json(x)
    if isinstance(x, Polydisc):
        return polydisc_to_json(x)
    if isinstance(x, (AffineMap, DiagonalAffineMap)):
        return affine_to_json(x)
    if isinstance(x, Classification):
        return classification_to_json(x)
    if isinstance(x, (DiagonalOperator, DirectionalOperator)):
        return operator_to_json(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        return [repr(x.real), repr(x.imag)]
    if is_dataclass(x):
        return {f.name: to_jsonable(getattr(x, f.name)) for f in fields(x)}
    return x


def classification_to_json(c: Classification) -> dict:
    return {
        "hypercyclic": c.hypercyclic,
        "strength": c.strength,
        "frequently_hypercyclic": c.frequently_hypercyclic,
        "case": c.case_label,
        "reason": c.reason,
        "witness": to_jsonable(c.witness_data),
    }


def certificate_to_json(cert) -> dict:
    return {
        "kind": "non_hypercyclicity_certificate",
        "fixed_point": to_jsonable(cert.fixed_point),
        "radius": render_real(cert.radius),
        "orbit_values": [render_real(x) for x in cert.orbit_values],
        "cauchy_bounds": [render_real(x) for x in cert.cauchy_bounds],
        "dominated": cert.dominated,
        "decay_index": cert.decay_index,
        "verdict": "dominated-and-decaying" if cert.verdict else "not-certified",
    }


def witness_to_json(w) -> dict:
    return {
        "kind": "transitivity_witness",
        "status": w.status,
        "n": w.n,
        "degree": w.degree,
        "eps": render_real(w.eps),
        "error_source": render_real(w.error_source),
        "error_sink": render_real(w.error_sink),
        "K": polydisc_to_json(w.K),
        "f": exppoly_to_json(w.f),
        "g": exppoly_to_json(w.g),
        "P": exppoly_to_json(w.P),
        "details": to_jsonable(w.details),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
