"""Exact-form algebra of exp-polynomials on C^N.

An :class:`ExpPoly` is a finite sum of terms ``c * exp(gamma . z) * z^beta``
with ``gamma . z = sum gamma_i z_i`` (no conjugation).  The class is closed
under sums, products, partial and directional derivatives and composition
with affine maps, which is all the operator code needs.

Coefficients are gmpy2 ``mpc`` at the polynomial's precision.  Integer
combinatorics (factorials, binomials, multinomials) stay exact until the last
multiplication.

Canonical form
--------------
* terms are keyed by ``(gamma rounded to prec-16 bits, beta)`` and merged;
* a merged coefficient is dropped when its modulus is below
  ``2^-(prec-8)`` times the largest modulus that flowed into the merge, so
  cancellation noise never survives;
* terms are sorted lexicographically on that key;
* more than ``cap`` distinct terms raises :class:`TermOverflowError`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpc, mpfr

from . import linalg
from ._accel import kernels
from .scalar import (
    DEFAULT_PREC,
    bilinear_dot,
    cpow,
    precision,
    round_up,
    to_mpc,
    to_mpfr,
    vector,
)

DEFAULT_TERM_CAP = 200_000

MultiIndex = tuple  # tuple[int, ...]


class DimensionError(ValueError):
    pass


class TermOverflowError(RuntimeError):
    def __init__(self, partial_size: int, cap: int):
        super().__init__(f"term count exceeded cap {cap} (reached {partial_size} terms)")
        self.partial_size = partial_size
        self.cap = cap


# ----------------------------------------------------------------------------
# multi-indices


def multi_index(entries: Iterable[int], dim: int | None = None) -> MultiIndex:
    out = tuple(int(a) for a in entries)
    if any(a < 0 for a in out):
        raise ValueError(f"multi-index entries must be non-negative: {out}")
    if not out:
        raise ValueError("multi-index must have at least one entry")
    if dim is not None and len(out) != dim:
        raise DimensionError(f"multi-index {out} has length {len(out)}, expected {dim}")
    return out


def mi_abs(alpha: Sequence[int]) -> int:
    return sum(alpha)


def mi_factorial(alpha: Sequence[int]) -> int:
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def unit_vector(i: int, dim: int) -> MultiIndex:
    return tuple(1 if k == i else 0 for k in range(dim))


# ----------------------------------------------------------------------------
# terms and canonicalization


@dataclass(frozen=True)
class Term:
    coeff: object  # mpc
    gamma: tuple  # N mpc
    beta: MultiIndex

    @property
    def is_polynomial(self) -> bool:
        return all(g == 0 for g in self.gamma)


def _gamma_key(gamma, key_prec):
    if all(g == 0 for g in gamma):
        return ()
    return tuple((mpfr(g.real, key_prec), mpfr(g.imag, key_prec)) for g in gamma)


def _canonicalize(dim, raw, prec, cap=DEFAULT_TERM_CAP):
    """Merge, prune and sort raw ``(coeff, gamma, beta)`` triples."""
    key_prec = max(prec - 16, 24)
    acc: dict = {}
    biggest = mpfr(0)
    for c, gamma, beta in raw:
        if c == 0:
            continue
        n = gmpy2.norm(c)
        if n > biggest:
            biggest = n
        key = (_gamma_key(gamma, key_prec), beta)
        slot = acc.get(key)
        if slot is None:
            acc[key] = [gamma, c]
            if len(acc) > cap:
                raise TermOverflowError(len(acc), cap)
        else:
            slot[1] += c
    if not acc:
        return ()
    thresh = biggest * mpfr(2) ** (-2 * (prec - 8))
    kept = [(k, g, c) for k, (g, c) in acc.items() if c != 0 and gmpy2.norm(c) >= thresh]
    kept.sort(key=lambda t: t[0])
    return tuple(Term(c, g, k[1]) for k, g, c in kept)


# ----------------------------------------------------------------------------
# the function class


class ExpPoly:
    """Immutable canonical exp-polynomial in ``dim`` complex variables.

    >>> z = ExpPoly.variable(0, 1)
    >>> (z * z).terms[0].beta
    (2,)
    """

    __slots__ = ("dim", "terms", "prec")

    def __init__(self, dim: int, terms: Iterable = (), prec: int = DEFAULT_PREC, cap: int = DEFAULT_TERM_CAP):
        if dim < 1:
            raise DimensionError("dimension must be >= 1")
        with precision(prec):
            raw = []
            for t in terms:
                if isinstance(t, Term):
                    c, g, b = t.coeff, t.gamma, t.beta
                else:
                    c, g, b = t
                g = vector(g) if g is not None else (mpc(0),) * dim
                b = multi_index(b)
                if len(g) != dim or len(b) != dim:
                    raise DimensionError(f"term of dimension {len(g)}/{len(b)} in ExpPoly of dimension {dim}")
                raw.append((to_mpc(c), g, b))
            canon = _canonicalize(dim, raw, prec, cap)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", canon)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    @classmethod
    def _raw(cls, dim, raw, prec, cap=DEFAULT_TERM_CAP) -> "ExpPoly":
        obj = object.__new__(cls)
        with precision(prec):
            canon = _canonicalize(dim, raw, prec, cap)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "terms", canon)
        object.__setattr__(obj, "prec", prec)
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, prec: int = DEFAULT_PREC) -> "ExpPoly":
        return cls(dim, (), prec)

    @classmethod
    def constant(cls, value, dim: int, prec: int = DEFAULT_PREC) -> "ExpPoly":
        return cls(dim, [(value, None, (0,) * dim)], prec)

    @classmethod
    def monomial(cls, beta, coeff=1, prec: int = DEFAULT_PREC) -> "ExpPoly":
        beta = multi_index(beta)
        return cls(len(beta), [(coeff, None, beta)], prec)

    @classmethod
    def variable(cls, i: int, dim: int, prec: int = DEFAULT_PREC) -> "ExpPoly":
        return cls.monomial(unit_vector(i, dim), 1, prec)

    @classmethod
    def exp_monomial(cls, gamma, beta, coeff=1, prec: int = DEFAULT_PREC) -> "ExpPoly":
        """``coeff * exp(gamma . z) * z^beta``."""
        beta = multi_index(beta)
        return cls(len(beta), [(coeff, gamma, beta)], prec)

    # inspection -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_polynomial(self) -> bool:
        return all(t.is_polynomial for t in self.terms)

    def degree(self) -> int:
        return max((sum(t.beta) for t in self.terms), default=-1)

    def max_coeff(self):
        return max((abs(t.coeff) for t in self.terms), default=mpfr(0))

    def with_precision(self, prec: int) -> "ExpPoly":
        return ExpPoly._raw(self.dim, [(t.coeff, t.gamma, t.beta) for t in self.terms], prec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            return NotImplemented
        if self.dim != other.dim or len(self.terms) != len(other.terms):
            return False
        return all(
            a.beta == b.beta and a.gamma == b.gamma and a.coeff == b.coeff
            for a, b in zip(self.terms, other.terms)
        )

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return f"ExpPoly(dim={self.dim}, 0)"
        parts = []
        for t in self.terms[:8]:
            c = complex(t.coeff)
            s = f"({c.real:.6g}{c.imag:+.6g}j)"
            if not t.is_polynomial:
                g = ",".join(f"{complex(x):.4g}" for x in t.gamma)
                s += f"*e[{g}]"
            if any(t.beta):
                s += "*z^" + str(t.beta)
            parts.append(s)
        more = f" + ...({len(self.terms) - 8} more)" if len(self.terms) > 8 else ""
        return f"ExpPoly(dim={self.dim}, " + " + ".join(parts) + more + ")"

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other, self.dim, self.prec)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other, self.dim, self.prec)
        return sub(self, other)

    def __rsub__(self, other):
        return ExpPoly.constant(other, self.dim, self.prec) - self

    def __mul__(self, other):
        if isinstance(other, ExpPoly):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __call__(self, *z):
        if len(z) == 1 and isinstance(z[0], (list, tuple)):
            z = z[0]
        return evaluate(self, z)


def _check_dims(f: ExpPoly, g: ExpPoly):
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {g.dim}")


def _prec(*fs) -> int:
    return max(f.prec for f in fs)


def _raw_terms(f: ExpPoly):
    return ((t.coeff, t.gamma, t.beta) for t in f.terms)


def add(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    _check_dims(f, g)
    return ExpPoly._raw(f.dim, itertools.chain(_raw_terms(f), _raw_terms(g)), _prec(f, g))


def negate(f: ExpPoly) -> ExpPoly:
    with precision(f.prec):
        return ExpPoly._raw(f.dim, [(-t.coeff, t.gamma, t.beta) for t in f.terms], f.prec)


def sub(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    _check_dims(f, g)
    with precision(_prec(f, g)):
        raw = list(_raw_terms(f)) + [(-t.coeff, t.gamma, t.beta) for t in g.terms]
    return ExpPoly._raw(f.dim, raw, _prec(f, g))


def scale(f: ExpPoly, s) -> ExpPoly:
    with precision(f.prec):
        s = to_mpc(s)
        return ExpPoly._raw(f.dim, [(s * t.coeff, t.gamma, t.beta) for t in f.terms], f.prec)


def canonically_equal(f: ExpPoly, g: ExpPoly) -> bool:
    """True when ``f - g`` canonicalizes to the empty sum."""
    return sub(f, g).is_zero()


def mul(f: ExpPoly, g: ExpPoly, cap: int = DEFAULT_TERM_CAP) -> ExpPoly:
    _check_dims(f, g)
    prec = _prec(f, g)
    with precision(prec):
        raw = []
        for a in f.terms:
            for b in g.terms:
                gam = tuple(x + y for x, y in zip(a.gamma, b.gamma))
                beta = tuple(x + y for x, y in zip(a.beta, b.beta))
                raw.append((a.coeff * b.coeff, gam, beta))
        return ExpPoly._raw(f.dim, raw, prec, cap)


# ----------------------------------------------------------------------------
# differentiation


def _coord_derivative(g, m: int, a: int):
    """``d^a/dz^a (exp(g z) z^m) = exp(g z) * sum factor * z^e``; returns [(factor, e)]."""
    if a == 0:
        return [(None, m)]
    if g == 0:
        if a > m:
            return []
        return [(mpc(math.perm(m, a)), m - a)]
    out = []
    for k in range(min(a, m) + 1):
        out.append((mpc(math.comb(a, k) * math.perm(m, k)) * cpow(g, a - k), m - k))
    return out


def partial_derivative(f: ExpPoly, alpha: Sequence[int]) -> ExpPoly:
    """``D^alpha f`` term by term (coordinates separate, so each term is a product rule)."""
    alpha = multi_index(alpha, f.dim)
    if not any(alpha):
        return f
    with precision(f.prec):
        raw = []
        for t in f.terms:
            per_coord = [_coord_derivative(t.gamma[i], t.beta[i], alpha[i]) for i in range(f.dim)]
            if any(not opts for opts in per_coord):
                continue
            for combo in itertools.product(*per_coord):
                c = t.coeff
                beta = []
                for fac, e in combo:
                    if fac is not None:
                        c = c * fac
                    beta.append(e)
                raw.append((c, t.gamma, tuple(beta)))
        return ExpPoly._raw(f.dim, raw, f.prec)


def directional_derivative(f: ExpPoly, v: Sequence) -> ExpPoly:
    """``D_v f = sum_i v_i d_i f``."""
    with precision(f.prec):
        v = vector(v)
        if len(v) != f.dim:
            raise DimensionError(f"direction of length {len(v)} for dimension {f.dim}")
        if all(x == 0 for x in v):
            raise ValueError("direction vector must be nonzero")
        raw = []
        for i, vi in enumerate(v):
            if vi == 0:
                continue
            d = partial_derivative(f, unit_vector(i, f.dim))
            raw.extend((vi * t.coeff, t.gamma, t.beta) for t in d.terms)
        return ExpPoly._raw(f.dim, raw, f.prec)


# ----------------------------------------------------------------------------
# affine maps


@dataclass(frozen=True)
class AffineMap:
    """``z -> A z + b`` on C^N (A need not be invertible)."""

    matrix: tuple
    offset: tuple

    def __post_init__(self):
        n = len(self.offset)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise DimensionError("affine map needs an N x N matrix and an N-vector offset")

    @classmethod
    def from_values(cls, matrix, offset, prec: int = DEFAULT_PREC) -> "AffineMap":
        with precision(prec):
            return cls(tuple(vector(row) for row in matrix), vector(offset))

    @classmethod
    def identity(cls, dim: int, prec: int = DEFAULT_PREC) -> "AffineMap":
        with precision(prec):
            return cls(linalg.identity(dim), (mpc(0),) * dim)

    @property
    def dim(self) -> int:
        return len(self.offset)

    def __call__(self, z):
        return linalg.vadd(linalg.matvec(self.matrix, z), self.offset)

    def then(self, other: "AffineMap") -> "AffineMap":
        """``other o self``."""
        return AffineMap(linalg.matmul(other.matrix, self.matrix), other(self.offset))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self o inner``."""
        return inner.then(self)

    def inverse(self) -> "AffineMap":
        Ainv = linalg.inverse(self.matrix)
        return AffineMap(Ainv, tuple(-x for x in linalg.matvec(Ainv, self.offset)))

    def power(self, k: int) -> "AffineMap":
        out = AffineMap(linalg.identity(self.dim), (mpc(0),) * self.dim)
        for _ in range(k):
            out = out.then(self)
        return out


@dataclass(frozen=True)
class DiagonalAffineMap:
    """``z -> (lambda_1 z_1 + b_1, ..., lambda_N z_N + b_N)``."""

    lam: tuple
    offset: tuple

    def __post_init__(self):
        if len(self.lam) != len(self.offset):
            raise DimensionError("lambda and offset lengths differ")

    @classmethod
    def from_values(cls, lam, offset, prec: int = DEFAULT_PREC) -> "DiagonalAffineMap":
        with precision(prec):
            return cls(vector(lam), vector(offset))

    @property
    def dim(self) -> int:
        return len(self.lam)

    def __call__(self, z):
        return tuple(l * x + b for l, x, b in zip(self.lam, z, self.offset))

    def embed(self) -> AffineMap:
        n = self.dim
        A = tuple(tuple(self.lam[i] if i == j else mpc(0) for j in range(n)) for i in range(n))
        return AffineMap(A, tuple(self.offset))

    def inverse(self) -> "DiagonalAffineMap":
        if any(l == 0 for l in self.lam):
            raise linalg.SingularMatrixError("diagonal map with a zero lambda is not invertible")
        inv = tuple(1 / l for l in self.lam)
        return DiagonalAffineMap(inv, tuple(-b * il for b, il in zip(self.offset, inv)))

    def power(self, k: int) -> "DiagonalAffineMap":
        lam = tuple(cpow(l, k) for l in self.lam)
        off = []
        for l, b in zip(self.lam, self.offset):
            acc, p = mpc(0), mpc(1)
            for _ in range(k):
                acc += p
                p *= l
            off.append(b * acc)
        return DiagonalAffineMap(lam, tuple(off))


def _powers(x, m: int):
    out = [mpc(1)]
    for _ in range(m):
        out.append(out[-1] * x)
    return out


def _linear_power(entries, const, m: int, out_dim: int) -> list:
    """Expand ``(const + sum_j a_j z_j)^m`` as [(coeff, exps)] via exact multinomials.

    ``entries`` lists the nonzero ``(j, a_j)``.  Enumeration order: powers of
    the constant ascending, then the first entry's power descending, ...
    """
    zero = (0,) * out_dim
    if m == 0:
        return [(mpc(1), zero)]
    const_pows = _powers(const, m) if const != 0 else None
    entry_pows = [(j, _powers(a, m)) for j, a in entries]
    out = []

    def rec(idx, remaining, coef, exps):
        if idx == len(entry_pows) - 1:
            j, pw = entry_pows[idx]
            e = list(exps)
            e[j] += remaining
            out.append((coef * pw[remaining], tuple(e)))
            return
        j, pw = entry_pows[idx]
        for k in range(remaining, -1, -1):
            e = list(exps)
            e[j] += k
            rec(idx + 1, remaining - k, coef * mpc(math.comb(remaining, k)) * pw[k], e)

    k0_range = range(0, m + 1) if const_pows is not None else (0,)
    for k0 in k0_range:
        rest = m - k0
        head = mpc(math.comb(m, k0)) * const_pows[k0] if const_pows is not None else mpc(1)
        if rest == 0:
            out.append((head, zero))
        elif entry_pows:
            rec(0, rest, head, [0] * out_dim)
    return out


def _poly_product(factors: list, out_dim: int) -> list:
    """Multiply sparse polynomial factors (lists of (coeff, exps)) in order."""
    result = [(None, (0,) * out_dim)]
    for fac in factors:
        merged: dict = {}
        for c1, e1 in result:
            for c2, e2 in fac:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c2 if c1 is None else c1 * c2
                if e in merged:
                    merged[e] += c
                else:
                    merged[e] = c
        result = [(c, e) for e, c in merged.items()]
    return result


def _compose_rows(f: ExpPoly, rows, offset, out_dim: int, cap: int) -> ExpPoly:
    """Compose ``f`` (dimension len(rows)) with ``z -> M z + offset`` where M has ``out_dim`` columns."""
    raw = []
    pow_cache: dict = {}
    nonzero = [[(j, a) for j, a in enumerate(row) if a != 0] for row in rows]
    for t in f.terms:
        gam_new = tuple(bilinear_dot(t.gamma, [rows[i][j] for i in range(f.dim)]) for j in range(out_dim))
        shift = t.coeff
        if not t.is_polynomial:
            e = bilinear_dot(t.gamma, offset)
            if e != 0:
                shift = shift * gmpy2.exp(e)
        factors = []
        for i, m in enumerate(t.beta):
            if m == 0:
                continue
            key = (i, m)
            if key not in pow_cache:
                pow_cache[key] = _linear_power(nonzero[i], offset[i], m, out_dim)
            factors.append(pow_cache[key])
        for c, exps in _poly_product(factors, out_dim):
            raw.append((shift if c is None else shift * c, gam_new, exps))
            if len(raw) > 4 * cap:
                tmp = _canonicalize(out_dim, raw, f.prec, cap)
                raw = [(x.coeff, x.gamma, x.beta) for x in tmp]
    return ExpPoly._raw(out_dim, raw, f.prec, cap)


def compose_affine(f: ExpPoly, phi: AffineMap, cap: int = DEFAULT_TERM_CAP) -> ExpPoly:
    """``f o phi`` exactly: multinomial expansion of the monomial part,
    ``exp(gamma . (Az + b)) = exp(gamma . b) exp((A^T gamma) . z)`` for the exponential part."""
    if phi.dim != f.dim:
        raise DimensionError(f"map of dimension {phi.dim} for function of dimension {f.dim}")
    with precision(f.prec):
        return _compose_rows(f, phi.matrix, phi.offset, f.dim, cap)


def compose_linear_forms(f: ExpPoly, rows, offset, out_dim: int, cap: int = DEFAULT_TERM_CAP) -> ExpPoly:
    """Composition with a possibly rectangular affine map ``C^out_dim -> C^f.dim``."""
    if len(rows) != f.dim or len(offset) != f.dim or any(len(r) != out_dim for r in rows):
        raise DimensionError("rectangular map shape does not match")
    with precision(f.prec):
        rows = tuple(vector(r) for r in rows)
        return _compose_rows(f, rows, vector(offset), out_dim, cap)


def compose_diagonal(f: ExpPoly, phi: DiagonalAffineMap, cap: int = DEFAULT_TERM_CAP) -> ExpPoly:
    """``f o phi`` for a diagonal symbol via per-variable binomial expansion."""
    if phi.dim != f.dim:
        raise DimensionError(f"map of dimension {phi.dim} for function of dimension {f.dim}")
    n = f.dim
    with precision(f.prec):
        raw = []
        cache: dict = {}
        for t in f.terms:
            gam_new = tuple(g * l if g != 0 and l != 0 else mpc(0) for g, l in zip(t.gamma, phi.lam))
            shift = t.coeff
            if not t.is_polynomial:
                e = bilinear_dot(t.gamma, phi.offset)
                if e != 0:
                    shift = shift * gmpy2.exp(e)
            factors = []
            for i, m in enumerate(t.beta):
                if m == 0:
                    continue
                key = (i, m)
                if key not in cache:
                    cache[key] = _binomial_power(i, phi.lam[i], phi.offset[i], m, n)
                factors.append(cache[key])
            for combo in itertools.product(*factors):
                c = None
                exps = [0] * n
                for fc, (i, k) in combo:
                    c = fc if c is None else c * fc
                    exps[i] += k
                raw.append((shift if c is None else shift * c, gam_new, tuple(exps)))
        return ExpPoly._raw(n, raw, f.prec, cap)


def _binomial_power(i, lam, b, m, n):
    """``(lam z_i + b)^m`` as [(coeff, (i, k))] in the same order as :func:`_linear_power`."""
    lam_pows = _powers(lam, m) if lam != 0 else None
    if b == 0:
        if lam_pows is None:
            return [(mpc(0), (i, 0))]
        return [(mpc(1) * lam_pows[m], (i, m))]
    b_pows = _powers(b, m)
    out = []
    for k0 in range(m + 1):
        rest = m - k0
        head = mpc(math.comb(m, k0)) * b_pows[k0]
        if rest == 0:
            out.append((head, (i, 0)))
        elif lam_pows is not None:
            out.append((head * mpc(math.comb(rest, rest)) * lam_pows[rest], (i, rest)))
    return out


def translate(f: ExpPoly, c: Sequence) -> ExpPoly:
    """``z -> f(z + c)``."""
    with precision(f.prec):
        c = vector(c)
        if all(x == 0 for x in c):
            return f
        return compose_diagonal(f, DiagonalAffineMap((mpc(1),) * f.dim, c))


# ----------------------------------------------------------------------------
# evaluation and norms


def evaluate(f: ExpPoly, z: Sequence):
    """``sum c exp(gamma . z) z^beta`` at working precision."""
    with precision(f.prec):
        z = vector(z)
        if len(z) != f.dim:
            raise DimensionError(f"point of length {len(z)} for dimension {f.dim}")
        acc = mpc(0)
        for t in f.terms:
            v = t.coeff
            if not t.is_polynomial:
                v = v * gmpy2.exp(bilinear_dot(t.gamma, z))
            for x, k in zip(z, t.beta):
                if k:
                    v = v * x**k
            acc += v
        return acc


@dataclass(frozen=True)
class Polydisc:
    """Product of closed discs ``B(center_i, radii_i)``."""

    center: tuple
    radii: tuple

    def __post_init__(self):
        if len(self.center) != len(self.radii):
            raise DimensionError("center and radii lengths differ")
        if any(not r > 0 for r in self.radii):
            raise ValueError("polydisc radii must be strictly positive")

    @classmethod
    def from_values(cls, center, radii, prec: int = DEFAULT_PREC) -> "Polydisc":
        with precision(prec):
            return cls(vector(center), tuple(to_mpfr(r) for r in radii))

    @classmethod
    def ball(cls, dim: int, radius=1, center=None, prec: int = DEFAULT_PREC) -> "Polydisc":
        center = center if center is not None else [0] * dim
        return cls.from_values(center, [radius] * dim, prec)

    @property
    def dim(self) -> int:
        return len(self.radii)

    def enlarged(self, delta) -> "Polydisc":
        return Polydisc(self.center, tuple(r + delta for r in self.radii))

    def shifted(self, c) -> "Polydisc":
        return Polydisc(tuple(x + y for x, y in zip(self.center, c)), self.radii)

    def separated_from(self, other: "Polydisc") -> list[int]:
        """Coordinates in which the two polydiscs have disjoint projections."""
        return [i for i in range(self.dim)
                if abs(self.center[i] - other.center[i]) > self.radii[i] + other.radii[i]]

    def boundary_points(self, grid: int):
        """Distinguished-boundary grid, ``grid`` angles per coordinate."""
        circles = []
        pi2 = 2 * gmpy2.const_pi()
        for c, r in zip(self.center, self.radii):
            pts = []
            for k in range(grid):
                th = pi2 * k / grid
                if 4 * k % grid == 0:
                    u = [mpc(1), mpc(0, 1), mpc(-1), mpc(0, -1)][4 * k // grid]
                else:
                    u = mpc(gmpy2.cos(th), gmpy2.sin(th))
                pts.append(c + r * u)
            circles.append(pts)
        return circles


def norm_upper_bound(f: ExpPoly, K: Polydisc):
    """Termwise triangle-inequality bound on ``sup_K |f|``.

    ``sum |c| exp(sum |gamma_i| R_i) prod R_i^beta_i`` with ``R_i = |center_i| + r_i``,
    evaluated with upward rounding and inflated by ``1 + 2^-(prec-8)`` to
    absorb rounding in the quantities it is compared against.
    """
    if K.dim != f.dim:
        raise DimensionError(f"polydisc of dimension {K.dim} for function of dimension {f.dim}")
    if f.is_zero():
        return mpfr(0)
    with round_up(f.prec):
        R = [abs(c) + r for c, r in zip(K.center, K.radii)]
        total = mpfr(0)
        for t in f.terms:
            v = abs(t.coeff)
            if not t.is_polynomial:
                s = mpfr(0)
                for g, Ri in zip(t.gamma, R):
                    if g != 0:
                        s += abs(g) * Ri
                v *= gmpy2.exp(s)
            for Ri, k in zip(R, t.beta):
                if k:
                    v *= Ri**k
            total += v
        return total * (1 + mpfr(2) ** (-(f.prec - 8)))


def to_double_arrays(f: ExpPoly):
    """``(coeffs, gammas, betas)`` numpy arrays, or None when out of double range."""
    import numpy as np

    T = len(f.terms)
    coeffs = np.empty(T, dtype=np.complex128)
    gammas = np.zeros((T, f.dim), dtype=np.complex128)
    betas = np.zeros((T, f.dim), dtype=np.int64)
    for k, t in enumerate(f.terms):
        coeffs[k] = complex(t.coeff)
        for i in range(f.dim):
            gammas[k, i] = complex(t.gamma[i])
            betas[k, i] = t.beta[i]
    if not (np.all(np.isfinite(coeffs)) and np.all(np.isfinite(gammas))):
        return None
    return coeffs, gammas, betas


def norm_sampled(f: ExpPoly, K: Polydisc, grid: int = 64, refine: int = 4):
    """Max of ``|f|`` over the distinguished-boundary grid (a lower estimate of the sup).

    The full grid is scanned in double precision by the fast kernel; the best
    ``refine`` points are then re-evaluated at working precision.
    """
    import numpy as np

    if grid < 4:
        raise ValueError("grid must have at least 4 points per variable")
    if K.dim != f.dim:
        raise DimensionError(f"polydisc of dimension {K.dim} for function of dimension {f.dim}")
    if f.is_zero():
        return mpfr(0)
    with precision(f.prec):
        circles = K.boundary_points(grid)
        arrays = to_double_arrays(f)
        if arrays is None or grid**f.dim <= refine:
            candidates = itertools.product(*[range(grid)] * f.dim)
        else:
            circ_d = [np.array([complex(p) for p in c]) for c in circles]
            mesh = np.stack([m.ravel() for m in np.meshgrid(*circ_d, indexing="ij")], axis=1)
            vals = np.abs(kernels.eval_terms(*arrays, np.ascontiguousarray(mesh)))
            vals = np.where(np.isfinite(vals), vals, np.inf)
            top = np.argsort(-vals, kind="stable")[:refine]
            candidates = [np.unravel_index(int(k), (grid,) * f.dim) for k in top]
        best = mpfr(0)
        for idx in candidates:
            z = tuple(circles[i][int(j)] for i, j in enumerate(idx))
            best = max(best, abs(evaluate(f, z)))
        return best


# ----------------------------------------------------------------------------
# integration


def antiderivative(f: ExpPoly, var: int = 0) -> ExpPoly:
    """An antiderivative in ``z_var``, other variables held fixed.

    ``int t^m dt = t^(m+1)/(m+1)``; for ``c != 0``
    ``int t^m e^(ct) dt = e^(ct) sum_k (-1)^k m!/(m-k)! t^(m-k) / c^(k+1)``.
    """
    if not 0 <= var < f.dim:
        raise DimensionError(f"variable index {var} out of range for dimension {f.dim}")
    with precision(f.prec):
        raw = []
        for t in f.terms:
            c = t.gamma[var]
            m = t.beta[var]
            if c == 0:
                beta = t.beta[:var] + (m + 1,) + t.beta[var + 1:]
                raw.append((t.coeff / (m + 1), t.gamma, beta))
                continue
            inv = 1 / c
            p = inv
            for k in range(m + 1):
                fac = mpc((-1) ** k * math.perm(m, k)) * p
                beta = t.beta[:var] + (m - k,) + t.beta[var + 1:]
                raw.append((t.coeff * fac, t.gamma, beta))
                p = p * inv
        return ExpPoly._raw(f.dim, raw, f.prec)


def integrate_univariate(g: ExpPoly, a, b_end):
    """``int_a^b g(t) dt`` along the straight segment (path-independent, g entire)."""
    if g.dim != 1:
        raise DimensionError("integrate_univariate needs a one-variable function")
    with precision(g.prec):
        a, b_end = to_mpc(a), to_mpc(b_end)
        if a == b_end or g.is_zero():
            return mpc(0)
        F = antiderivative(g, 0)
        return evaluate(F, (b_end,)) - evaluate(F, (a,))
