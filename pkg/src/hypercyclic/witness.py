"""Constructive evidence for the verdicts.

* :func:`non_hc_certificate`: bounded orbit at the fixed point, dominated by
  Cauchy estimates that decay to zero.
* :func:`transitivity_witness_expansive` and
  :func:`transitivity_witness_translation`: a polynomial P close to f on K
  whose n-th iterate is close to g on K.
* :func:`runge_fit`: sampled least-squares polynomial approximation on two
  disjoint polydiscs, the numerical stand-in for Runge's theorem.
* convergence, Runge-transitivity and eigenvector checks.

Sup norms on the success side of every inequality are rigorous upper bounds
(:func:`sup_bound`); sampled norms are diagnostics only.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr

from . import classify as _cl
from ._accel import kernels
from .fnalg import (
    DiagonalAffineMap,
    DimensionError,
    ExpPoly,
    Polydisc,
    compose_diagonal,
    evaluate,
    mi_abs,
    mi_factorial,
    multi_index,
    norm_sampled,
    norm_upper_bound,
    sub,
    to_double_arrays,
    translate,
)
from .ops import (
    AdmissibilityError,
    DiagonalOperator,
    apply,
    check_admissible,
    conjugate_to_centered,
    fixed_point,
    iterate,
    poly_right_inverse_power,
    right_inverse_diag,
    right_inverse_diag_span,
)
from .scalar import bilinear_dot, mpow, precision, render_real, round_up, to_mpfr, vector


class OutOfScopeError(ValueError):
    """The operator is outside the hypotheses of the requested construction."""

    def __init__(self, message: str, classification=None):
        super().__init__(message)
        self.classification = classification


class SeparationError(ValueError):
    pass


class OverlapError(ValueError):
    pass


class ConditioningError(ArithmeticError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class WitnessUnreachable(RuntimeError):
    """No witness met the tolerance; ``best`` is the closest attempt."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


# ----------------------------------------------------------------------------
# rigorous sup-norm bounds


def _centered_bound(f: ExpPoly, K: Polydisc):
    if all(c == 0 for c in K.center):
        return norm_upper_bound(f, K)
    with precision(f.prec):
        g = translate(f, K.center)
        return norm_upper_bound(g, Polydisc(tuple(mpc(0) for _ in K.center), K.radii))


def _bernstein_bound(f: ExpPoly, K: Polydisc, oversample: int, max_points: int):
    """Sampled bound for polynomials made rigorous by Bernstein's inequality.

    On a circle of radius r a degree-d polynomial has ``|p'| <= d/r sup|p|``,
    so with m equispaced samples ``sup|p| <= max_samples / (1 - pi d / m)``.
    Applied one variable at a time over the distinguished boundary.
    """
    degs = [max((t.beta[i] for t in f.terms), default=0) for i in range(f.dim)]
    grids = [max(8, oversample * d) if d else 1 for d in degs]
    if math.prod(grids) > max_points:
        return None
    with round_up(f.prec):
        factor = mpfr(1)
        pi = gmpy2.const_pi()
        for d, m in zip(degs, grids):
            if d:
                factor /= 1 - pi * d / m
    with precision(f.prec):
        circles = []
        for c, r, m in zip(K.center, K.radii, grids):
            if m == 1:
                circles.append([c])
            else:
                circles.append(Polydisc((c,), (r,)).boundary_points(m)[0])
        best = mpfr(0)
        for z in product(*circles):
            best = max(best, abs(evaluate(f, z)))
    with round_up(f.prec):
        # evaluation rounding is relative to the termwise magnitude
        slack = norm_upper_bound(f, K) * mpfr(2) ** (-(f.prec - 16))
        return best * factor + slack


def sup_bound(f: ExpPoly, K: Polydisc, oversample: int = 32, max_points: int = 20000):
    """Rigorous upper bound on ``sup_K |f|``.

    The smallest of: the termwise bound about the origin, the termwise bound
    about K's center, and (for polynomials) the Bernstein-certified sample maximum.
    """
    if f.dim != K.dim:
        raise DimensionError(f"polydisc of dimension {K.dim} for function of dimension {f.dim}")
    if f.is_zero():
        return mpfr(0)
    best = min(norm_upper_bound(f, K), _centered_bound(f, K))
    if f.is_polynomial:
        b = _bernstein_bound(f, K, oversample, max_points)
        if b is not None:
            best = min(best, b)
    return best


# ----------------------------------------------------------------------------
# non-hypercyclicity certificate


@dataclass(frozen=True)
class NonHCCertificate:
    fixed_point: tuple
    orbit_values: list
    cauchy_bounds: list
    radius: object
    dominated: bool
    decay_index: int | None
    verdict: bool

    def csv(self) -> str:
        out = io.StringIO()
        out.write("n,orbit_value,cauchy_bound\n")
        for n, (o, c) in enumerate(zip(self.orbit_values, self.cauchy_bounds)):
            out.write(f"{n},{render_real(o)},{render_real(c)}\n")
        return out.getvalue()


def _cauchy_ratio_poly(alpha, n):
    """``prod_i ((n+1) a_i)! / (n a_i)!`` as an exact integer."""
    acc = 1
    for a in alpha:
        for j in range(n * a + 1, (n + 1) * a + 1):
            acc *= j
    return acc


def non_hc_certificate(T: DiagonalOperator, f: ExpPoly, r, n_max: int) -> NonHCCertificate:
    """Orbit of f at the fixed point z0 against the Cauchy bounds

    ``|lam^alpha|^(n(n-1)/2) (n alpha)! / r^(n|alpha|) sup_{|z - z0| <= r} |f|``.

    ``decay_index`` is an m with every bound from m on strictly smaller than
    the previous one; it is certified analytically, since the ratio of
    consecutive bounds is ``|lam^alpha|^n P(n) / r^|alpha|`` with ``P(n+1)/P(n)``
    decreasing in n.
    """
    cls = _cl.classify_operator(T)
    if not cls.case_label.startswith("3c"):
        raise OutOfScopeError(f"operator is in case {cls.case_label}, not a decaying case", cls)
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    if f.dim != T.dim:
        raise DimensionError("dimension mismatch")
    prec = T.prec
    with precision(prec):
        r = to_mpfr(r)
        if not r > 0:
            raise ValueError("radius must be positive")
        z0 = fixed_point(T)
        K = Polydisc(z0, tuple(r for _ in range(T.dim)))
        sup = sup_bound(f, K)
        q = mpfr(1)
        for lam, a in zip(T.lam, T.alpha):
            if a:
                q *= abs(lam) ** a
        A = mi_abs(T.alpha)
        orbit_values, bounds = [], []
        g = f
        for n in range(n_max + 1):
            if n:
                g = apply(T, g)
            orbit_values.append(abs(evaluate(g, z0)) if not g.is_zero() else mpfr(0))
            with round_up(prec):
                fac = mi_factorial([n * a for a in T.alpha])
                bounds.append(q ** (n * (n - 1) // 2) * fac / r ** (n * A) * sup)
        tol = 1 + mpfr(2) ** -32
        dominated = all(o <= c * tol for o, c in zip(orbit_values, bounds))

        decay_index = None
        if sup == 0:
            decay_index = 0
        else:
            rA = r ** A
            for m in range(0, 100000):
                ratio = q ** m * _cauchy_ratio_poly(T.alpha, m) / rA
                step = q * mpfr(_cauchy_ratio_poly(T.alpha, m + 1)) / _cauchy_ratio_poly(T.alpha, m)
                if ratio < 1 and step < 1:
                    decay_index = m
                    break
        return NonHCCertificate(z0, orbit_values, bounds, r, dominated, decay_index,
                                dominated and decay_index is not None)


# ----------------------------------------------------------------------------
# transitivity witnesses


@dataclass(frozen=True)
class TransitivityWitness:
    P: ExpPoly
    n: int
    f: ExpPoly
    g: ExpPoly
    K: Polydisc
    eps: object
    error_source: object  # bound on ||P - f||_K
    error_sink: object  # bound on ||T^n P - g||_K
    status: str
    degree: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == "success"


def _expansive_scope(T: DiagonalOperator):
    cls = _cl.classify_operator(T)
    if cls.case_label not in ("3a",):
        raise OutOfScopeError(f"need |lambda^alpha| >= 1 (case 3a), got {cls.case_label}", cls)
    if not any(T.alpha2):
        raise OutOfScopeError("alpha must differentiate in a coordinate with lambda_i != 1", cls)
    return cls


def transitivity_witness_expansive(T: DiagonalOperator, f: ExpPoly, g: ExpPoly, K: Polydisc, eps,
                                   n_max: int = 64) -> TransitivityWitness:
    """``P = f + S_n g`` for the smallest n with ``||T^n f||_K`` and ``||S_n g||_K`` both below eps/2.

    ``S_n`` is the closed-form right inverse of the centered operator,
    carried back through the centering translation, so ``T^n S_n g = g``.
    """
    _expansive_scope(T)
    if f.dim != T.dim or g.dim != T.dim or K.dim != T.dim:
        raise DimensionError("dimension mismatch")
    prec = T.prec
    with precision(prec):
        eps = to_mpfr(eps)
        half = eps / 2
        T0, rec = conjugate_to_centered(T)
        back = rec.inverse()
        gc = rec(g)
        for t in gc.terms:
            check_admissible(T0, t.gamma, t.beta)
        best = None
        Tf = f
        for n in range(1, n_max + 1):
            Tf = apply(T, Tf) if not Tf.is_zero() else Tf
            bf = sup_bound(Tf, K)
            Sg = back(right_inverse_diag_span(T0, gc, n))
            bs = sup_bound(Sg, K)
            score = max(bf, bs)
            if best is None or score < best[0]:
                best = (score, n, Sg, bf, bs)
            if bf < half and bs < half:
                break
        score, n, Sg, bf, bs = best
        P = f + Sg
        e1 = sup_bound(sub(P, f), K)
        resid = sub(iterate(T, P, n), g)
        e2 = sup_bound(resid, K)
        ok = e1 < half and e2 < half
        w = TransitivityWitness(P, n, f, g, K, eps, e1, e2, "success" if ok else "failure", None,
                                {"S_norm_bound": bs, "Tn_f_bound": bf, "centering": rec.data,
                                 "exact_sink": resid.is_zero()})
        if not ok:
            raise WitnessUnreachable(f"no n <= {n_max} brings both errors below eps/2", w)
        return w


@dataclass(frozen=True)
class RungeFit:
    P: ExpPoly
    error1: float
    error2: float
    residual_rms: float
    degree: int
    samples: int
    shift: tuple
    scale: tuple


def total_degree_exponents(dim: int, d: int) -> list:
    """Exponent vectors of total degree <= d, graded by degree."""
    out = []
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(dim), k):
            beta = [0] * dim
            for i in combo:
                beta[i] += 1
            out.append(tuple(beta))
    return out


def _sample_points(K: Polydisc, samples: int) -> np.ndarray:
    circles = [np.asarray([complex(c) + float(r) * np.exp(2j * np.pi * k / samples) for k in range(samples)])
               for c, r in zip(K.center, K.radii)]
    mesh = np.stack([m.ravel() for m in np.meshgrid(*circles, indexing="ij")], axis=1)
    center = np.asarray([[complex(c) for c in K.center]])
    return np.concatenate([center, mesh], axis=0)


def _values(h: ExpPoly, pts: np.ndarray) -> np.ndarray:
    if h.is_zero():
        return np.zeros(pts.shape[0], dtype=np.complex128)
    arrays = to_double_arrays(h)
    if arrays is not None:
        vals = kernels.eval_terms(*arrays, np.ascontiguousarray(pts))
        if np.all(np.isfinite(vals)):
            return vals
    with precision(h.prec):
        return np.asarray([complex(evaluate(h, tuple(p))) for p in pts])


def runge_fit(h1: ExpPoly, K1: Polydisc, h2: ExpPoly, K2: Polydisc, degree: int,
              samples: int | None = None) -> RungeFit:
    """Least-squares polynomial of total degree <= d fitting h1 on K1 and h2 on K2.

    Samples: each polydisc's center plus a ``samples``-per-variable grid on its
    distinguished boundary.  The fit runs in double precision in the scaled
    variable ``w = (z - s) / sigma`` and is returned as an exact z-polynomial
    at the inputs' precision.  Reported errors are the sampled maxima on each set.
    """
    if h1.dim != h2.dim or K1.dim != h1.dim or K2.dim != h1.dim:
        raise DimensionError("dimension mismatch")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if not K1.separated_from(K2):
        raise OverlapError("the two polydiscs are not disjoint in any coordinate")
    dim = h1.dim
    prec = max(h1.prec, h2.prec)
    if samples is None:
        samples = 64 if dim == 1 else 16
    if h1.is_polynomial and h1.degree() <= degree and sub(h1, h2).is_zero():
        # the common target is in the model space: least squares recovers it exactly
        zero = (0j,) * dim
        return RungeFit(h1.with_precision(prec), 0.0, 0.0, 0.0, degree, samples, zero, (1.0,) * dim)
    p1, p2 = _sample_points(K1, samples), _sample_points(K2, samples)
    v1, v2 = _values(h1, p1), _values(h2, p2)
    pts = np.concatenate([p1, p2])
    vals = np.concatenate([v1, v2])
    lo, hi = pts.real.min(axis=0), pts.real.max(axis=0)
    lo_i, hi_i = pts.imag.min(axis=0), pts.imag.max(axis=0)
    shift = (lo + hi) / 2 + 1j * (lo_i + hi_i) / 2
    scale = np.abs(pts - shift).max(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    w = (pts - shift) / scale
    betas = total_degree_exponents(dim, degree)
    V = kernels.basis_matrix(np.ascontiguousarray(w), np.asarray(betas, dtype=np.int_))
    try:
        coef, *_ = np.linalg.lstsq(V, vals, rcond=None)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(f"least squares failed at degree {degree}: {exc}") from exc
    fitted = V @ coef
    if not (np.all(np.isfinite(coef)) and np.all(np.isfinite(fitted))):
        raise ConditioningError(f"non-finite least-squares solution at degree {degree}")
    r = fitted - vals
    e1 = float(np.abs(r[: len(p1)]).max())
    e2 = float(np.abs(r[len(p1):]).max())
    rms = float(np.sqrt(np.mean(np.abs(r) ** 2)))
    with precision(prec):
        Pw = ExpPoly(dim, [(mpc(complex(c)), None, b) for c, b in zip(coef, betas) if c != 0], prec)
        sub_map = DiagonalAffineMap(tuple(mpc(1) / mpc(complex(s)) for s in scale),
                                    tuple(-mpc(complex(a)) / mpc(complex(s)) for a, s in zip(shift, scale)))
        P = compose_diagonal(Pw, sub_map)
    return RungeFit(P, e1, e2, rms, degree, samples, tuple(complex(x) for x in shift),
                    tuple(float(x) for x in scale))


def _translation_scope(T: DiagonalOperator):
    if not any(T.alpha):
        raise OutOfScopeError("alpha = 0: not a differentiation operator")
    if any(l == 0 for l in T.lam):
        raise OutOfScopeError("some lambda_i = 0")
    coords = [i for i in T.unit_coords if not T.b_is_zero(i)]
    if not coords:
        raise OutOfScopeError("no coordinate is a translation (lambda_i = 1, b_i != 0)", _cl.classify_operator(T))
    return coords


def proof_eps(T: DiagonalOperator) -> tuple:
    """Cauchy radii ``|b_i|/2`` (``1/2`` when b_i = 0), as in the Runge-transitivity estimate."""
    with precision(T.prec):
        return tuple(abs(b) / 2 if b != 0 else mpfr(1) / 2 for b in T.b)


def chain_constant(T: DiagonalOperator, n: int, cauchy_eps) -> object:
    """``2^((n(n+1)/2)(|alpha|+N)) alpha!^n / ((2 pi)^(nN) prod eps_i^(n(alpha_i+1)))``."""
    N = T.dim
    with precision(T.prec + 32):
        num = mpfr(2) ** ((n * (n + 1) // 2) * (mi_abs(T.alpha) + N)) * mpfr(mi_factorial(T.alpha)) ** n
        den = (2 * gmpy2.const_pi()) ** (n * N)
        for e, a in zip(cauchy_eps, T.alpha):
            den *= mpfr(e) ** (n * (a + 1))
        out = num / den
    with precision(T.prec):
        return mpfr(out)


def target_polydisc(T: DiagonalOperator, K: Polydisc, n: int, cauchy_eps) -> Polydisc:
    """``prod B(phi_i^n(k_i), |lam_i|^n r_i + eps_i sum_{k<n} |lam_i|^k / 2^(n-k-1))``."""
    with precision(T.prec):
        centers, radii = [], []
        for lam, b, c, r, e in zip(T.lam, T.b, K.center, K.radii, cauchy_eps):
            z = c
            for _ in range(n):
                z = lam * z + b
            a = abs(lam)
            rad = a ** n * r + e * sum(a ** k / mpfr(2) ** (n - k - 1) for k in range(n))
            centers.append(z)
            radii.append(rad)
        return Polydisc(tuple(centers), tuple(radii))


def transitivity_witness_translation(T: DiagonalOperator, f: ExpPoly, g: ExpPoly, K: Polydisc, eps, n: int,
                                     degree_cap: int = 30, samples: int | None = None,
                                     cauchy_eps=None) -> TransitivityWitness:
    """Runge-type witness when some coordinate of phi is a translation.

    ``S^n g`` (polynomial right inverse) is fitted on the target polydisc
    Lambda_n together with f on K; degrees 0..degree_cap are tried in order and
    the first P with both rigorous errors below eps/2 is returned.
    """
    coords = _translation_scope(T)
    if f.dim != T.dim or g.dim != T.dim or K.dim != T.dim:
        raise DimensionError("dimension mismatch")
    if not g.is_polynomial:
        raise AdmissibilityError("the sink target g must be a polynomial")
    prec = T.prec
    with precision(prec):
        eps = to_mpfr(eps)
        half = eps / 2
        ce = tuple(mpfr(x) for x in (cauchy_eps if cauchy_eps is not None else [mpfr(1) / 2] * T.dim))
        if len(ce) != T.dim or any(not x > 0 for x in ce):
            raise ValueError("cauchy_eps must have one positive entry per coordinate")
        sep = [l for l in coords if n * abs(T.b[l]) > 2 * K.radii[l] + 2 * ce[l]]
        if n < 1 or not sep:
            raise SeparationError(f"n = {n} is below the separation threshold: need n |b_l| > 2 r_l + 2 eps_l")
        l = sep[0]
        Lam = target_polydisc(T, K, n, ce)
        gap = abs(Lam.center[l] - K.center[l]) - K.radii[l] - Lam.radii[l]
        delta = gap / 4
        Sg = poly_right_inverse_power(T, g, n)
        Kn = chain_constant(T, n, ce)
        best = None
        for d in range(degree_cap + 1):
            fit = runge_fit(f, K, Sg, Lam, d, samples)
            P = fit.P
            e1 = sup_bound(sub(P, f), K)
            e2 = sup_bound(sub(iterate(T, P, n), g), K)
            score = max(e1, e2)
            if best is None or score < best[0]:
                best = (score, d, fit, e1, e2)
            if e1 < half and e2 < half:
                break
        score, d, fit, e1, e2 = best
        ok = e1 < half and e2 < half
        lam_err = sup_bound(sub(Sg, fit.P), Lam)
        details = {"Lambda": Lam, "delta": delta, "cauchy_eps": ce, "separation_coordinate": l,
                   "fit_error_K": fit.error1, "fit_error_Lambda": fit.error2, "fit_residual_rms": fit.residual_rms,
                   "Lambda_error_bound": lam_err, "K_n": Kn, "chain_bound": Kn * lam_err}
        w = TransitivityWitness(fit.P, n, f, g, K, eps, e1, e2, "success" if ok else "failure", d, details)
        if not ok:
            raise WitnessUnreachable(f"no degree <= {degree_cap} brings both errors below eps/2", w)
        return w


# ----------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class ConvergenceReport:
    terms: list
    partial_sums: list
    closed_bound: object
    within_bound: bool
    tail_decreasing: bool
    ratios: list


def unconditional_convergence_check(T: DiagonalOperator, gamma, beta, K: Polydisc, M: int) -> ConvergenceReport:
    """Partial sums of ``sup_K |S_n(e_gamma z^beta)|`` for ``n = 1..M`` against a closed bound.

    One variable, gamma = 0: ``k! e^R``.  Otherwise ``E R^beta e^C`` with
    ``E = exp(sum |gamma_i| R_i)`` and ``C = R^alpha2 / |gamma^alpha1 lam^beta e^<gamma,b>|``,
    valid when ``|lam^alpha2| >= 1`` since ``(beta + n alpha2)! >= beta! n!``.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    check_admissible(T, gamma if gamma is not None else [0] * T.dim, beta)
    beta = multi_index(beta, T.dim)
    a2 = T.alpha2
    if T.dim > 1 and not any(a2):
        raise AdmissibilityError("alpha2 = 0: the right inverse does not raise the degree")
    prec = T.prec
    with precision(prec):
        gamma = vector(gamma) if gamma is not None else (mpc(0),) * T.dim
        R = [abs(c) + r for c, r in zip(K.center, K.radii)]
        terms = [norm_upper_bound(right_inverse_diag(T, gamma, beta, n), K) for n in range(1, M + 1)]
        sums, acc = [], mpfr(0)
        for t in terms:
            acc += t
            sums.append(acc)
        q2 = mpfr(1)
        for lam, a in zip(T.lam, a2):
            if a:
                q2 *= abs(lam) ** a
        bound = None
        if q2 >= 1:
            with round_up(prec):
                if T.dim == 1 and gamma[0] == 0 and T.alpha == (1,):
                    bound = mpfr(math.factorial(beta[0])) * gmpy2.exp(R[0])
                else:
                    E = gmpy2.exp(sum((abs(g) * Ri for g, Ri in zip(gamma, R)), mpfr(0)))
                    Rb = mpfr(1)
                    Ra = mpfr(1)
                    for Ri, b, a in zip(R, beta, a2):
                        Rb *= Ri ** b
                        Ra *= Ri ** a
                    den = abs(mpow(gamma, T.alpha1) * mpow(T.lam, beta) * gmpy2.exp(bilinear_dot(gamma, T.b)))
                    bound = E * Rb * gmpy2.exp(Ra / den)
        ratios = [terms[i + 1] / terms[i] for i in range(len(terms) - 1) if terms[i] > 0]
        tail = len(terms) < 2 or (terms[-1] < terms[-2])
        within = bound is not None and all(s <= bound for s in sums)
        return ConvergenceReport(terms, sums, bound, within, tail, ratios)


@dataclass(frozen=True)
class RungeBoundReport:
    m: int
    n: int
    lhs: object  # upper bound on p_m(T^n f)
    constant: object  # C_{m,n}
    rhs_seminorm: object  # lower estimate of p_{n+m+1}(f)
    rhs_seminorm_upper: object
    ratio: object
    holds: bool
    ladder_contained: bool
    cauchy_eps: tuple
    radii_m: tuple
    radii_rhs: tuple


def ladder_radii(T: DiagonalOperator, m: int) -> tuple:
    """``r_i(m) = |b_i| m`` (``m`` when b_i = 0)."""
    with precision(T.prec):
        return tuple(abs(b) * m if b != 0 else mpfr(m) for b in T.b)


def verify_runge_transitive_bound(T: DiagonalOperator, f: ExpPoly, m: int, n: int) -> RungeBoundReport:
    """Check ``p_m(T^n f) <= C_{m,n} p_{n+m+1}(f)`` with the seminorm ladder ``p_m = sup over prod B(0, r_i(m))``.

    The left side is a rigorous upper bound and the right side a sampled lower
    estimate, so ``ratio <= 1`` certifies the inequality.
    """
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    coords = _translation_scope(T)
    cls = _cl.classify_operator(T)
    exact = list(T.lam_exact) if T.lam_exact is not None else [None] * T.dim
    inside = _cl._all_within_unit_disc(T.lam, exact, T.prec)
    if not inside:
        raise OutOfScopeError("need |lambda_i| <= 1 for every i", cls)
    prec = T.prec
    with precision(prec):
        ce = proof_eps(T)
        rm = ladder_radii(T, m)
        rr = ladder_radii(T, n + m + 1)
        zero = tuple(mpc(0) for _ in range(T.dim))
        Km, Kr = Polydisc(zero, rm), Polydisc(zero, rr)
        lhs = sup_bound(iterate(T, f, n), Km)
        C = chain_constant(T, n, ce)
        rhs_lo = norm_sampled(f, Kr, grid=128)
        rhs_hi = sup_bound(f, Kr)
        Lam = target_polydisc(T, Km, n, ce)
        contained = all(abs(c) + r <= R for c, r, R in zip(Lam.center, Lam.radii, rr))
        if lhs == 0:
            ratio = mpfr(0)
        elif rhs_lo == 0:
            ratio = mpfr("inf")
        else:
            ratio = lhs / (C * rhs_lo)
        return RungeBoundReport(m, n, lhs, C, rhs_lo, rhs_hi, ratio, ratio <= 1, contained, ce, rm, rr)


def eigen_residual(T: DiagonalOperator, gamma, beta, K: Polydisc):
    """``norm_upper_bound(T(e_gamma z^beta) - mu e_gamma z^beta, K)`` with
    ``mu = gamma^alpha1 lam^beta e^<gamma,b>``."""
    if any(T.alpha2):
        raise AdmissibilityError("eigen relation needs alpha2 = 0")
    beta = multi_index(beta, T.dim)
    with precision(T.prec):
        gamma = vector(gamma)
        check_admissible(T, gamma, beta)
        e = ExpPoly.exp_monomial(gamma, beta, prec=T.prec)
        mu = mpow(gamma, T.alpha1) * mpow(T.lam, beta)
        s = bilinear_dot(gamma, T.b)
        if s != 0:
            mu *= gmpy2.exp(s)
        return norm_upper_bound(sub(apply(T, e), e * mu), K)


def eigenvalue(T: DiagonalOperator, gamma, beta):
    beta = multi_index(beta, T.dim)
    with precision(T.prec):
        gamma = vector(gamma)
        mu = mpow(gamma, T.alpha1) * mpow(T.lam, beta)
        s = bilinear_dot(gamma, T.b)
        return mu * gmpy2.exp(s) if s != 0 else mu
