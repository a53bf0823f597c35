"""Arbitrary-precision complex scalars.

Every complex number in the package is a :class:`gmpy2.mpc`.  Precision is
never ambient: public entry points take a ``prec`` argument (or read it off
an :class:`~hypercyclic.fnalg.ExpPoly`) and run under :func:`precision`,
which installs a gmpy2 context for the current thread only.

User-declared inputs (``"1/3"``, ``"1+i"``, ``0.5``, ``Fraction(3, 2)``) are
also kept as exact Gaussian rationals by :func:`exact_of`, so that decisions
which are discontinuous in a parameter (``lambda_i == 1``, ``|lambda^alpha|
>= 1``) can be taken without rounding.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Sequence, Union

import gmpy2
from gmpy2 import mpc, mpfr

DEFAULT_PREC = 192

ScalarLike = Union[int, float, complex, Fraction, str, Sequence, "mpc", "mpfr"]
GaussQ = tuple  # (Fraction, Fraction)


class ScalarParseError(ValueError):
    pass


@contextmanager
def precision(prec: int, rounding=None) -> Iterator[None]:
    """Run the block with a thread-local gmpy2 context at ``prec`` bits."""
    if prec < 2:
        raise ValueError(f"precision must be >= 2 bits, got {prec}")
    kw = {"precision": int(prec)}
    if rounding is not None:
        kw["round"] = rounding
    with gmpy2.context(**kw):
        yield


def round_up(prec: int):
    return precision(prec, gmpy2.RoundUp)


def _split_complex(s: str) -> tuple[str, str]:
    body = s[:-1]
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "eE":
            re_tok, im_tok = body[:pos], body[pos:]
            break
    else:
        re_tok, im_tok = "0", body
    if im_tok in ("", "+"):
        im_tok = "1"
    elif im_tok == "-":
        im_tok = "-1"
    return re_tok, im_tok


def _parse_real(tok) -> Fraction:
    if isinstance(tok, Fraction):
        return tok
    if isinstance(tok, bool):
        raise ScalarParseError(f"not a number: {tok!r}")
    if isinstance(tok, int):
        return Fraction(tok)
    if isinstance(tok, float):
        if not math.isfinite(tok):
            raise ScalarParseError(f"non-finite value {tok!r}")
        return Fraction(tok)
    if isinstance(tok, str):
        try:
            return Fraction(tok.strip().replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarParseError(f"cannot parse real number {tok!r}") from exc
    raise ScalarParseError(f"cannot parse real number {tok!r}")


def exact_of(x) -> GaussQ | None:
    """Exact Gaussian-rational value of a declared input, or None.

    gmpy2 values are treated as computed quantities and return None.
    """
    if isinstance(x, (type(mpc(0)), type(mpfr(0)))):
        return None
    if isinstance(x, complex):
        return (_parse_real(x.real), _parse_real(x.imag))
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ScalarParseError(f"complex pair must have 2 entries, got {x!r}")
        return (_parse_real(x[0]), _parse_real(x[1]))
    if isinstance(x, str):
        s = x.strip().replace(" ", "")
        if not s:
            raise ScalarParseError("empty number")
        if s[-1] in "ij":
            re_tok, im_tok = _split_complex(s)
            return (_parse_real(re_tok), _parse_real(im_tok))
        return (_parse_real(s), Fraction(0))
    return (_parse_real(x), Fraction(0))


def _fraction_to_mpfr(q: Fraction):
    return mpfr(gmpy2.mpq(q.numerator, q.denominator))


def to_mpc(x, prec: int | None = None):
    """Convert any accepted scalar form to an mpc at the current (or given) precision."""
    if prec is not None:
        with precision(prec):
            return to_mpc(x)
    if isinstance(x, type(mpc(0))):
        return mpc(x)
    if isinstance(x, type(mpfr(0))):
        return mpc(x)
    if isinstance(x, type(gmpy2.mpq(0))):
        return mpc(mpfr(x))
    q = exact_of(x)
    return mpc(_fraction_to_mpfr(q[0]), _fraction_to_mpfr(q[1]))


def to_mpfr(x, prec: int | None = None):
    if prec is not None:
        with precision(prec):
            return to_mpfr(x)
    if isinstance(x, type(mpfr(0))):
        return mpfr(x)
    z = to_mpc(x)
    if z.imag != 0:
        raise ScalarParseError(f"expected a real number, got {x!r}")
    return z.real


def vector(xs, prec: int | None = None) -> tuple:
    if prec is not None:
        with precision(prec):
            return vector(xs)
    return tuple(to_mpc(x) for x in xs)


def render_real(x) -> str:
    """Decimal string with enough digits to round-trip at the value's precision."""
    x = mpfr(x) if not isinstance(x, type(mpfr(0))) else x
    if x == 0:
        return "0"
    if not gmpy2.is_finite(x):
        raise ValueError(f"cannot render non-finite value {x}")
    mant, exp, _ = x.digits(10)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    mant = mant.rstrip("0") or "0"
    e = exp - 1
    head, tail = mant[0], mant[1:]
    body = head + ("." + tail if tail else "")
    return f"{sign}{body}e{e}" if e else f"{sign}{body}"


def render(z) -> list[str]:
    z = mpc(z) if not isinstance(z, type(mpc(0))) else z
    return [render_real(z.real), render_real(z.imag)]


def parse_pair(obj, prec: int):
    """Parse the ``["re", "im"]`` wire form (or any accepted scalar form)."""
    return to_mpc(obj, prec)


def bilinear_dot(u: Sequence, v: Sequence):
    """``sum u_i v_i`` with no conjugation; the pairing inside ``e^{gamma . z}``."""
    acc = mpc(0)
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc += a * b
    return acc


def hermitian_inner(u: Sequence, v: Sequence):
    """``sum u_i conj(v_i)``: linear in ``u``, conjugate-linear in ``v``."""
    acc = mpc(0)
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc += a * b.conjugate()
    return acc


def norm2(u: Sequence):
    acc = mpfr(0)
    for a in u:
        acc += gmpy2.norm(a)
    return gmpy2.sqrt(acc)


def cpow(z, k: int):
    """Integer power with guard bits so large exponents round once."""
    if k == 0:
        return mpc(1)
    prec = gmpy2.get_context().precision
    guard = 16 + int(abs(k)).bit_length() * 2
    with precision(prec + guard):
        w = mpc(z) ** k
    return mpc(w)


def mpow(lam: Sequence, exps: Sequence[int]):
    """``prod lam_i ** exps_i`` for a vector base and an integer exponent vector."""
    prec = gmpy2.get_context().precision
    with precision(prec + 32):
        acc = mpc(1)
        for z, k in zip(lam, exps):
            if k:
                acc *= cpow(z, k)
    return mpc(acc)


def is_zero(z) -> bool:
    return z == 0


def exact_abs2(q: GaussQ) -> Fraction:
    return q[0] * q[0] + q[1] * q[1]


def exact_mul(p: GaussQ, q: GaussQ) -> GaussQ:
    return (p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0])
