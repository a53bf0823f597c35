"""The operators ``C_phi o D^alpha`` (diagonal symbol) and ``C_phi o D_v``
(general affine symbol), their iterates, right inverses and conjugations.

Closed forms are used wherever one exists; :func:`iterate` (repeated
:func:`apply`) is the universal oracle they are tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2
from gmpy2 import mpc, mpfr

from . import linalg
from .fnalg import (
    AffineMap,
    DiagonalAffineMap,
    DimensionError,
    ExpPoly,
    Term,
    compose_affine,
    compose_diagonal,
    compose_linear_forms,
    directional_derivative,
    antiderivative,
    mi_factorial,
    multi_index,
    partial_derivative,
    sub,
    translate,
)
from .scalar import (
    DEFAULT_PREC,
    bilinear_dot,
    cpow,
    exact_of,
    hermitian_inner,
    mpow,
    norm2,
    precision,
    to_mpc,
    to_mpfr,
    vector,
)


class AdmissibilityError(ValueError):
    """Basis element outside the support pattern a closed form needs."""


class ReducingSubspaceError(ValueError):
    pass


# ----------------------------------------------------------------------------
# operator types


@dataclass(frozen=True)
class DiagonalOperator:
    """``T f(z) = D^alpha f(lambda_1 z_1 + b_1, ..., lambda_N z_N + b_N)``.

    ``lam_exact``/``b_exact`` keep the declared Gaussian-rational values when
    there are any; unit detection (``lambda_i == 1``) uses them, or exact
    equality of the mpc values.  ``unit_tol`` switches to a tolerance test and
    must be asked for explicitly.
    """

    phi: DiagonalAffineMap
    alpha: tuple
    prec: int = DEFAULT_PREC
    lam_exact: tuple | None = None
    b_exact: tuple | None = None
    unit_tol: object = None

    def __post_init__(self):
        if len(self.alpha) != self.phi.dim:
            raise DimensionError(f"alpha has length {len(self.alpha)}, symbol has dimension {self.phi.dim}")

    @classmethod
    def from_values(cls, lam, b, alpha, prec: int = DEFAULT_PREC, unit_tol=None) -> "DiagonalOperator":
        if len(lam) != len(b) or len(lam) != len(alpha):
            raise DimensionError(f"lengths differ: lambda {len(lam)}, b {len(b)}, alpha {len(alpha)}")
        lam_exact = tuple(exact_of(x) for x in lam)
        b_exact = tuple(exact_of(x) for x in b)
        phi = DiagonalAffineMap.from_values(lam, b, prec)
        tol = None if unit_tol is None else to_mpfr(unit_tol, prec)
        return cls(phi, multi_index(alpha), prec,
                   None if any(q is None for q in lam_exact) else lam_exact,
                   None if any(q is None for q in b_exact) else b_exact,
                   tol)

    @property
    def dim(self) -> int:
        return self.phi.dim

    @property
    def lam(self) -> tuple:
        return self.phi.lam

    @property
    def b(self) -> tuple:
        return self.phi.offset

    @property
    def is_exact(self) -> bool:
        return self.lam_exact is not None

    def _is_one(self, i: int) -> bool:
        if self.unit_tol is not None:
            with precision(self.prec):
                return abs(self.lam[i] - 1) <= self.unit_tol
        if self.lam_exact is not None:
            return self.lam_exact[i] == (1, 0)
        return self.lam[i] == 1

    @property
    def unit_coords(self) -> tuple:
        """Coordinates where the symbol is a translation ``z_i + b_i``."""
        return tuple(i for i in range(self.dim) if self._is_one(i))

    @property
    def alpha1(self) -> tuple:
        u = set(self.unit_coords)
        return tuple(a if i in u else 0 for i, a in enumerate(self.alpha))

    @property
    def alpha2(self) -> tuple:
        u = set(self.unit_coords)
        return tuple(0 if i in u else a for i, a in enumerate(self.alpha))

    def b_is_zero(self, i: int) -> bool:
        if self.b_exact is not None:
            return self.b_exact[i] == (0, 0)
        return self.b[i] == 0

    @property
    def is_centered(self) -> bool:
        u = set(self.unit_coords)
        return all(self.b_is_zero(i) for i in range(self.dim) if i not in u)

    def with_offset(self, b) -> "DiagonalOperator":
        with precision(self.prec):
            b = vector(b)
        b_ex = None
        if self.b_exact is not None:
            b_ex = tuple(exact_of(x) if not isinstance(x, type(mpc(0))) else None for x in b)
            if any(q is None for q in b_ex):
                b_ex = None
        return DiagonalOperator(DiagonalAffineMap(self.phi.lam, b), self.alpha, self.prec,
                                self.lam_exact, b_ex, self.unit_tol)


@dataclass(frozen=True)
class DirectionalOperator:
    """``T f(z) = D_v f(A z + b)``."""

    phi: AffineMap
    v: tuple
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        if len(self.v) != self.phi.dim:
            raise DimensionError(f"direction of length {len(self.v)} for dimension {self.phi.dim}")
        if all(x == 0 for x in self.v):
            raise ValueError("direction vector v must be nonzero")

    @classmethod
    def from_values(cls, A, b, v, prec: int = DEFAULT_PREC) -> "DirectionalOperator":
        if len(A) != len(b) or len(v) != len(b) or any(len(r) != len(b) for r in A):
            raise DimensionError("A must be N x N with b and v of length N")
        phi = AffineMap.from_values(A, b, prec)
        with precision(prec):
            return cls(phi, vector(v), prec)

    @property
    def dim(self) -> int:
        return self.phi.dim

    @property
    def A(self):
        return self.phi.matrix

    @property
    def b(self):
        return self.phi.offset


Operator = DiagonalOperator | DirectionalOperator


# ----------------------------------------------------------------------------
# application and iteration


def apply(T: Operator, f: ExpPoly) -> ExpPoly:
    if f.dim != T.dim:
        raise DimensionError(f"function of dimension {f.dim} for operator of dimension {T.dim}")
    if isinstance(T, DiagonalOperator):
        return compose_diagonal(partial_derivative(f, T.alpha), T.phi)
    return compose_affine(directional_derivative(f, T.v), T.phi)


def iterate(T: Operator, f: ExpPoly, n: int) -> ExpPoly:
    """``T^n f`` by repeated application."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for _ in range(n):
        if f.is_zero():
            break
        f = apply(T, f)
    return f


def orbit(T: Operator, f: ExpPoly, n_max: int):
    """Yield ``(n, T^n f)`` for ``n = 0..n_max``."""
    g = f
    yield 0, g
    for n in range(1, n_max + 1):
        g = apply(T, g)
        yield n, g


def iterate_1d_closed(lam, f: ExpPoly, n: int) -> ExpPoly:
    """``lam^(n(n-1)/2) f^(n)(lam^n z)`` for ``T f(z) = f'(lam z)``."""
    if f.dim != 1:
        raise DimensionError("iterate_1d_closed needs a one-variable function")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return f
    with precision(f.prec):
        lam = to_mpc(lam)
        d = partial_derivative(f, (n,))
        g = compose_diagonal(d, DiagonalAffineMap((cpow(lam, n),), (mpc(0),)))
        return g * cpow(lam, n * (n - 1) // 2)


def check_admissible(T: DiagonalOperator, gamma, beta) -> None:
    """Raise unless ``e_gamma z^beta`` fits the centered closed forms.

    Needs: T centered, gamma zero off the translation coordinates, beta zero on them.
    """
    if not T.is_centered:
        raise AdmissibilityError("operator is not in centered form; conjugate first")
    unit = set(T.unit_coords)
    for i in range(T.dim):
        if i in unit:
            if beta[i] != 0:
                raise AdmissibilityError(f"beta_{i} must vanish on translation coordinate {i}")
        elif gamma[i] != 0:
            raise AdmissibilityError(f"gamma_{i} must vanish on non-translation coordinate {i}")


def _basis_args(T, gamma, beta):
    with precision(T.prec):
        gamma = vector(gamma) if gamma is not None else (mpc(0),) * T.dim
    beta = multi_index(beta, T.dim)
    if len(gamma) != T.dim:
        raise DimensionError("gamma has the wrong length")
    check_admissible(T, gamma, beta)
    return gamma, beta


def _gamma_power(gamma, alpha1, n):
    return mpow(gamma, [n * a for a in alpha1])


def iterate_diag_closed_basis(T: DiagonalOperator, gamma, beta, n: int) -> ExpPoly:
    """``T^n (e_gamma z^beta)`` in closed form (centered operator)::

        gamma^(n a1) e^(n <gamma,b>) lam^(n beta - n(n+1)/2 a2) beta!/(beta - n a2)!  e_gamma z^(beta - n a2)
    """
    gamma, beta = _basis_args(T, gamma, beta)
    if n < 0:
        raise ValueError("n must be >= 0")
    a1, a2 = T.alpha1, T.alpha2
    new_beta = tuple(bb - n * a for bb, a in zip(beta, a2))
    if any(x < 0 for x in new_beta):
        return ExpPoly.zero(T.dim, T.prec)
    with precision(T.prec):
        if n == 0:
            return ExpPoly._raw(T.dim, [(mpc(1), gamma, beta)], T.prec)
        lam_exp = [n * bb - (n * (n + 1) // 2) * a for bb, a in zip(beta, a2)]
        c = mpc(gmpy2.mpq(mi_factorial(beta), mi_factorial(new_beta)))
        c *= _gamma_power(gamma, a1, n)
        c *= mpow(T.lam, lam_exp)
        e = bilinear_dot(gamma, T.b)
        if e != 0:
            c *= gmpy2.exp(n * e)
        return ExpPoly._raw(T.dim, [(c, gamma, new_beta)], T.prec)


def right_inverse_1d(lam, k: int, n: int, prec: int = DEFAULT_PREC) -> ExpPoly:
    """``S_n(z^k) = k!/(k+n)! z^(k+n) / lam^(nk + n(n-1)/2)``."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    with precision(prec):
        lam = to_mpc(lam)
        if lam == 0:
            raise ZeroDivisionError("right inverse undefined for lambda = 0")
        c = mpc(gmpy2.mpq(math.factorial(k), math.factorial(k + n))) / cpow(lam, n * k + n * (n - 1) // 2)
        return ExpPoly._raw(1, [(c, (mpc(0),), (k + n,))], prec)


def right_inverse_1d_poly(lam, g: ExpPoly, n: int) -> ExpPoly:
    """Linear extension of :func:`right_inverse_1d` to polynomials."""
    if g.dim != 1 or not g.is_polynomial:
        raise AdmissibilityError("right_inverse_1d extends to one-variable polynomials only")
    out = ExpPoly.zero(1, g.prec)
    for t in g.terms:
        out = out + right_inverse_1d(lam, t.beta[0], n, g.prec) * t.coeff
    return out


def right_inverse_diag(T: DiagonalOperator, gamma, beta, n: int) -> ExpPoly:
    """``S_n(e_gamma z^beta)`` for the centered operator::

        beta! / (gamma^(n a1) e^(n<gamma,b>) lam^(n beta + n(n-1)/2 a2) (beta + n a2)!)  e_gamma z^(beta + n a2)
    """
    gamma, beta = _basis_args(T, gamma, beta)
    if n < 0:
        raise ValueError("n must be >= 0")
    a1, a2 = T.alpha1, T.alpha2
    with precision(T.prec):
        if any(a and g == 0 for a, g in zip(a1, gamma)):
            raise AdmissibilityError("gamma^alpha_(1) = 0: S_n undefined for this basis vector")
        if n == 0:
            return ExpPoly._raw(T.dim, [(mpc(1), gamma, beta)], T.prec)
        new_beta = tuple(bb + n * a for bb, a in zip(beta, a2))
        lam_exp = [n * bb + (n * (n - 1) // 2) * a for bb, a in zip(beta, a2)]
        if any(e and T.lam[i] == 0 for i, e in enumerate(lam_exp)):
            raise ZeroDivisionError("lambda_i = 0 on a coordinate the right inverse divides by")
        denom = _gamma_power(gamma, a1, n) * mpow(T.lam, lam_exp)
        e = bilinear_dot(gamma, T.b)
        if e != 0:
            denom *= gmpy2.exp(n * e)
        c = mpc(gmpy2.mpq(mi_factorial(beta), mi_factorial(new_beta))) / denom
        return ExpPoly._raw(T.dim, [(c, gamma, new_beta)], T.prec)


def right_inverse_diag_span(T: DiagonalOperator, g: ExpPoly, n: int) -> ExpPoly:
    """Linear extension of :func:`right_inverse_diag` over g's terms."""
    raw = []
    with precision(T.prec):
        for t in g.terms:
            s = right_inverse_diag(T, t.gamma, t.beta, n)
            raw.extend((t.coeff * u.coeff, u.gamma, u.beta) for u in s.terms)
    return ExpPoly._raw(T.dim, raw, T.prec)


def monomial_antiderivative(beta, alpha, prec: int = DEFAULT_PREC) -> ExpPoly:
    """``I^alpha(z^beta) = beta!/(alpha+beta)! z^(alpha+beta)``."""
    beta = multi_index(beta)
    alpha = multi_index(alpha, len(beta))
    top = tuple(a + b for a, b in zip(alpha, beta))
    with precision(prec):
        c = mpc(gmpy2.mpq(mi_factorial(beta), mi_factorial(top)))
        return ExpPoly._raw(len(beta), [(c, (mpc(0),) * len(beta), top)], prec)


def poly_right_inverse(T: DiagonalOperator, g: ExpPoly) -> ExpPoly:
    """``S g = I^alpha(g o phi^-1)``, a right inverse of T on polynomials."""
    if any(l == 0 for l in T.lam):
        raise ZeroDivisionError("symbol is not invertible (some lambda_i = 0)")
    if not g.is_polynomial:
        raise AdmissibilityError("poly_right_inverse needs a polynomial (no exponential part)")
    if g.dim != T.dim:
        raise DimensionError("dimension mismatch")
    with precision(T.prec):
        h = compose_diagonal(g, T.phi.inverse())
        raw = []
        for t in h.terms:
            top = tuple(a + b for a, b in zip(T.alpha, t.beta))
            c = t.coeff * mpc(gmpy2.mpq(mi_factorial(t.beta), mi_factorial(top)))
            raw.append((c, t.gamma, top))
        return ExpPoly._raw(T.dim, raw, h.prec)


def poly_right_inverse_power(T: DiagonalOperator, g: ExpPoly, n: int) -> ExpPoly:
    for _ in range(n):
        g = poly_right_inverse(T, g)
    return g


# ----------------------------------------------------------------------------
# conjugations


@dataclass(frozen=True)
class ConjugationRecord:
    """A translation ``tau_c f = f(. + c)`` or a linear change ``Q^* f = f(Q .)``."""

    kind: str  # "translation" | "linear"
    data: tuple
    direction: str = "forward"

    def _forward(self, f: ExpPoly) -> ExpPoly:
        if self.kind == "translation":
            return translate(f, self.data)
        return compose_affine(f, AffineMap(self.data, (mpc(0),) * len(self.data)))

    def _backward(self, f: ExpPoly) -> ExpPoly:
        if self.kind == "translation":
            with precision(f.prec):
                return translate(f, tuple(-x for x in self.data))
        with precision(f.prec):
            Qinv = linalg.inverse(self.data)
        return compose_affine(f, AffineMap(Qinv, (mpc(0),) * len(self.data)))

    def __call__(self, f: ExpPoly) -> ExpPoly:
        return self._forward(f) if self.direction == "forward" else self._backward(f)

    def inverse(self) -> "ConjugationRecord":
        return ConjugationRecord(self.kind, self.data,
                                 "backward" if self.direction == "forward" else "forward")


def conjugate_to_centered(T: DiagonalOperator):
    """Return ``(T0, rec)`` with ``T0 tau_c = tau_c T`` and T0 centered.

    ``c_l = 0`` on translation coordinates, ``b_l / (1 - lambda_l)`` elsewhere.
    """
    unit = set(T.unit_coords)
    with precision(T.prec):
        c = []
        b0 = []
        for i in range(T.dim):
            if i in unit or T.b_is_zero(i):
                c.append(mpc(0))
                b0.append(T.b[i])
            else:
                c.append(T.b[i] / (1 - T.lam[i]))
                b0.append(mpc(0))
        b0_exact = None
        if T.b_exact is not None:
            b0_exact = tuple(T.b_exact[i] if i in unit else (Fraction(0), Fraction(0)) for i in range(T.dim))
        T0 = DiagonalOperator(DiagonalAffineMap(T.lam, tuple(b0)), T.alpha, T.prec,
                              T.lam_exact, b0_exact, T.unit_tol)
        return T0, ConjugationRecord("translation", tuple(c))


def fixed_point(phi, unit_tol=None, tol=None, prec: int | None = None):
    """A fixed point of the affine map, or None.

    Diagonal maps: ``b_i / (1 - lambda_i)``, with ``0`` when ``lambda_i = 1``
    and ``b_i = 0``, none when ``lambda_i = 1`` and ``b_i != 0``.  General maps:
    solve ``(I - A) z = b`` by rank-revealing elimination.
    """
    if isinstance(phi, DiagonalOperator):
        T = phi
        with precision(T.prec):
            unit = set(T.unit_coords)
            out = []
            for i in range(T.dim):
                if i in unit:
                    if not T.b_is_zero(i):
                        return None
                    out.append(mpc(0))
                else:
                    out.append(T.b[i] / (1 - T.lam[i]))
            return tuple(out)
    p = prec or gmpy2.get_context().precision
    with precision(max(p, 53)):
        if isinstance(phi, DiagonalAffineMap):
            out = []
            for l, b in zip(phi.lam, phi.offset):
                one = abs(l - 1) <= unit_tol if unit_tol is not None else l == 1
                if one:
                    if b != 0:
                        return None
                    out.append(mpc(0))
                else:
                    out.append(b / (1 - l))
            return tuple(out)
        n = phi.dim
        M = linalg.sub(linalg.identity(n), phi.matrix)
        res = linalg.solve_ranked(M, phi.offset, tol)
        return res.solution


def jordan_conjugate(T: DirectionalOperator, Q, J, tol=None) -> DirectionalOperator:
    """``C_psi o D_w`` with ``psi(z) = J z + Q^-1 b``, ``w = Q^-1 v`` (caller supplies ``A = Q J Q^-1``)."""
    with precision(T.prec):
        Q = tuple(vector(r) for r in Q)
        J = tuple(vector(r) for r in J)
        Qinv = linalg.inverse(Q)
        tol = linalg.default_tol() if tol is None else to_mpfr(tol)
        recon = linalg.matmul(linalg.matmul(Q, J), Qinv)
        err = linalg.frobenius(linalg.sub(recon, T.A))
        if err > tol * max(mpfr(1), linalg.frobenius(T.A)):
            raise ValueError(f"A != Q J Q^-1 (Frobenius defect {float(err):.3e})")
        c = linalg.matvec(Qinv, T.b)
        w = linalg.matvec(Qinv, T.v)
        return DirectionalOperator(AffineMap(J, c), w, T.prec)


def linear_record(Q, prec: int = DEFAULT_PREC) -> ConjugationRecord:
    with precision(prec):
        return ConjugationRecord("linear", tuple(vector(r) for r in Q))


def jordan_data_exact(A, prec: int = DEFAULT_PREC):
    """``(Q, J)`` for diagonal matrices, single Jordan blocks and 2x2 matrices with distinct eigenvalues."""
    with precision(prec):
        A = tuple(vector(r) for r in A)
        n = len(A)
        if linalg.is_diagonal(A):
            return linalg.identity(n), A
        d = A[0][0]
        upper = all(A[i][j] == (d if i == j else 1 if j == i + 1 else 0) for i in range(n) for j in range(n))
        lower = all(A[i][j] == (d if i == j else 1 if i == j + 1 else 0) for i in range(n) for j in range(n))
        if upper or lower:
            return linalg.identity(n), A
        if n == 2:
            (a, b), (c, dd) = A
            tr, det = a + dd, a * dd - b * c
            disc = gmpy2.sqrt(tr * tr - 4 * det)
            if disc == 0:
                raise ValueError("repeated eigenvalue: supply Jordan data explicitly")
            l1, l2 = (tr + disc) / 2, (tr - disc) / 2
            vecs = []
            for l in (l1, l2):
                if b != 0:
                    vecs.append((b, l - a))
                elif c != 0:
                    vecs.append((l - dd, c))
                else:
                    vecs.append((mpc(1), mpc(0)) if l == a else (mpc(0), mpc(1)))
            Q = ((vecs[0][0], vecs[1][0]), (vecs[0][1], vecs[1][1]))
            J = ((l1, mpc(0)), (mpc(0), l2))
            return Q, J
    raise ValueError("Jordan data must be supplied by the caller for this matrix")


# ----------------------------------------------------------------------------
# directional operators


def directional_iterate_closed(T: DirectionalOperator, f: ExpPoly, k: int) -> ExpPoly:
    """``T^k f = (D_v D_Av ... D_(A^(k-1) v) f) o phi^k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return f
    with precision(T.prec):
        w = T.v
        g = f
        for _ in range(k):
            g = directional_derivative(g, w)
            if g.is_zero():
                return g
            w = linalg.matvec(T.A, w)
        return compose_affine(g, T.phi.power(k))


def _check_reducing(A, basis, v, tol):
    n = len(v)
    scale = max(mpfr(1), linalg.frobenius(A))
    if linalg.invariance_defect(A, basis) > tol * scale:
        raise ReducingSubspaceError("M is not invariant under A")
    comp = linalg.complement_basis(basis, n)
    if comp and linalg.invariance_defect(A, comp) > tol * scale:
        raise ReducingSubspaceError("M-perp is not invariant under A (M does not reduce A)")
    w = tuple(v)
    for q in basis:
        c = hermitian_inner(w, q)
        w = tuple(x - c * y for x, y in zip(w, q))
    if norm2(w) > tol * norm2(v):
        raise ReducingSubspaceError("v does not lie in M")
    return comp


def mu(z, v):
    """``<z, v> / ||v||^2`` (Hermitian pairing, complex-linear in z)."""
    nv2 = norm2(v) ** 2
    return hermitian_inner(z, v) / nv2


def directional_right_inverse(T: DirectionalOperator, g: ExpPoly, M_basis, tol=None) -> ExpPoly:
    """``S g(z) = int_{mu(z0)}^{mu(z)} g(phi^-1(t v + pi~(z) + pi_2(z))) dt``.

    Since ``pi~(z) + pi_2(z) = z - mu(z) v``, the integrand is
    ``g(A^-1 (z + (t - mu(z)) v - b))``, an exp-polynomial in ``(t, z)``.  The
    antiderivative in t is taken in closed form and evaluated at
    ``t = mu(z)`` and ``t = mu(z0)``.
    """
    if g.dim != T.dim:
        raise DimensionError("dimension mismatch")
    n = T.dim
    with precision(T.prec):
        tol = linalg.default_tol() if tol is None else to_mpfr(tol)
        basis = linalg.orthonormalize([vector(q) for q in M_basis], tol)
        if not basis:
            raise ReducingSubspaceError("empty subspace basis")
        _check_reducing(T.A, basis, T.v, tol)
        z0 = fixed_point(T.phi, tol=tol)
        if z0 is None:
            raise ValueError("phi has no fixed point")
        if g.is_zero():
            return ExpPoly.zero(n, g.prec)
        Ainv = linalg.inverse(T.A)
        nv2 = norm2(T.v) ** 2
        mu_row = tuple(x.conjugate() / nv2 for x in T.v)
        # P = I - v mu^T
        P = tuple(tuple((mpc(1) if i == j else mpc(0)) - T.v[i] * mu_row[j] for j in range(n)) for i in range(n))
        AinvP = linalg.matmul(Ainv, P)
        Ainv_v = linalg.matvec(Ainv, T.v)
        Ainv_b = linalg.matvec(Ainv, T.b)
        rows = tuple((Ainv_v[i],) + AinvP[i] for i in range(n))
        offset = tuple(-x for x in Ainv_b)
        h = compose_linear_forms(g, rows, offset, n + 1)
        F = antiderivative(h, 0)
        ident = tuple(tuple(mpc(1) if i == j else mpc(0) for j in range(n)) for i in range(n))
        upper = compose_linear_forms(F, (mu_row,) + ident, (mpc(0),) * (n + 1), n)
        lower = compose_linear_forms(F, ((mpc(0),) * n,) + ident, (mu(z0, T.v),) + (mpc(0),) * n, n)
        return sub(upper, lower)
