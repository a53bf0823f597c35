"""Hypercyclicity verdicts for the diagonal, one-variable and directional operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2
from gmpy2 import mpc, mpfr

from . import linalg
from .fnalg import DimensionError, multi_index
from .scalar import DEFAULT_PREC, exact_abs2, exact_of, hermitian_inner, norm2, precision, vector

YES, NO, UNKNOWN = "yes", "no", "unknown"
SMG, MIXING, NONE = "strongly_mixing_gaussian", "mixing", "none"

# bound_sequence prefixes are extended up to this length when certifying decay
SEQUENCE_CAP = 4096


class ClassificationError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    hypercyclic: str
    strength: str
    frequently_hypercyclic: str
    case_label: str
    reason: str
    witness_data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.hypercyclic not in (YES, NO, UNKNOWN):
            raise ClassificationError(f"bad hypercyclic value {self.hypercyclic!r}")
        if self.strength not in (SMG, MIXING, NONE, UNKNOWN):
            raise ClassificationError(f"bad strength value {self.strength!r}")
        if self.frequently_hypercyclic not in (YES, NO, UNKNOWN):
            raise ClassificationError(f"bad frequently_hypercyclic value {self.frequently_hypercyclic!r}")
        if self.strength in (SMG, MIXING) and self.hypercyclic != YES:
            raise ClassificationError("a mixing strength requires hypercyclic=yes")
        if self.hypercyclic == NO and (self.strength != NONE or self.frequently_hypercyclic != NO):
            raise ClassificationError("hypercyclic=no forces strength=none and frequently_hypercyclic=no")
        if self.frequently_hypercyclic == YES and self.hypercyclic != YES:
            raise ClassificationError("frequently hypercyclic implies hypercyclic")

    @property
    def verdict(self) -> tuple:
        return (self.hypercyclic, self.strength, self.frequently_hypercyclic)


def _no(label, reason, **witness):
    return Classification(NO, NONE, NO, label, reason, witness)


# ----------------------------------------------------------------------------
# comparisons against 1, exact when the inputs are declared rationals


def _band(prec: int):
    return mpfr(2) ** (-(prec // 2))


def _compare_abs2(exact: Fraction | None, approx, prec: int) -> int | None:
    """Sign of ``|x|^2 - 1``; None inside the ambiguity band."""
    if exact is not None:
        return (exact > 1) - (exact < 1)
    with precision(prec):
        d = approx - 1
        if abs(d) <= _band(prec):
            return None
        return 1 if d > 0 else -1


def _parse_vec(xs, prec):
    ex = [exact_of(x) for x in xs]
    with precision(prec):
        vals = vector(xs)
    return vals, ex


def _is_zero(val, ex):
    return ex == (0, 0) if ex is not None else val == 0


def _is_one(val, ex, unit_tol, prec):
    if unit_tol is not None:
        with precision(prec):
            return abs(val - 1) <= mpfr(unit_tol)
    return ex == (1, 0) if ex is not None else val == 1


# ----------------------------------------------------------------------------
# one variable


def classify_1d(lam, b, prec: int = DEFAULT_PREC) -> Classification:
    """``f -> f'(lam z + b)``: hypercyclic iff ``|lam| >= 1``, and then strongly mixing."""
    (lv,), (le,) = _parse_vec([lam], prec)
    if _is_zero(lv, le):
        return _no("lambda-zero", "lambda = 0: every iterate T^n f with n >= 1 is constant", zero_coordinate=0)
    with precision(prec):
        s = _compare_abs2(exact_abs2(le) if le else None, gmpy2.norm(lv), prec)
    if s is None:
        return Classification(UNKNOWN, UNKNOWN, UNKNOWN, "boundary-ambiguous",
                              "|lambda| is within the ambiguity band around 1 at working precision",
                              {"band": _band(prec)})
    if s >= 0:
        if _is_one(lv, le, None, prec):
            return Classification(YES, SMG, YES, "1d-convolution",
                                  "lambda = 1: a nontrivial convolution operator (differentiation followed by translation)")
        return Classification(YES, SMG, YES, "1d-expansive", "|lambda| >= 1: strongly mixing in the Gaussian sense")
    return _no("1d-contractive", "|lambda| < 1: the orbit at the fixed point decays", fixed_point_available=True)


# ----------------------------------------------------------------------------
# diagonal symbol


def _abs_lambda_alpha_sign(lv, le, alpha, prec):
    """Sign of ``|lambda^alpha|^2 - 1`` (None when ambiguous) and the computed value."""
    with precision(prec + 32):
        approx = mpfr(1)
        for x, a in zip(lv, alpha):
            if a:
                approx *= gmpy2.norm(x) ** a
    exact = None
    if all(e is not None for e, a in zip(le, alpha) if a):
        exact = Fraction(1)
        for e, a in zip(le, alpha):
            if a:
                exact *= exact_abs2(e) ** a
    with precision(prec):
        return _compare_abs2(exact, mpfr(approx), prec), gmpy2.sqrt(mpfr(approx))


def _all_within_unit_disc(lv, le, prec):
    """True / False / None (ambiguous) for ``|lambda_i| <= 1`` for all i."""
    ambiguous = False
    for v, e in zip(lv, le):
        with precision(prec):
            s = _compare_abs2(exact_abs2(e) if e else None, gmpy2.norm(v), prec)
        if s is None:
            ambiguous = True
        elif s > 0:
            return False
    return None if ambiguous else True


def _fhc_case_b(lv, le, prec):
    inside = _all_within_unit_disc(lv, le, prec)
    return YES if inside else UNKNOWN


def classify_diagonal(lam, b, alpha, prec: int = DEFAULT_PREC, unit_tol=None) -> Classification:
    """Verdict for ``f -> D^alpha f(lam_1 z_1 + b_1, ..., lam_N z_N + b_N)``.

    Decision order: a zero lambda_j; alpha = 0 (composition operator, runaway
    test); ``|lam^alpha| >= 1``; a translation coordinate; otherwise no.
    """
    if not (len(lam) == len(b) == len(alpha)):
        raise DimensionError(f"lengths differ: lambda {len(lam)}, b {len(b)}, alpha {len(alpha)}")
    alpha = multi_index(alpha)
    n = len(lam)
    lv, le = _parse_vec(lam, prec)
    bv, be = _parse_vec(b, prec)

    zeros = [i for i in range(n) if _is_zero(lv[i], le[i])]
    if zeros:
        return _no("lambda-zero", f"lambda_{zeros[0] + 1} = 0: every iterate T^n f with n >= 1 is constant in z_{zeros[0] + 1}",
                   zero_coordinate=zeros[0])

    unit = [i for i in range(n) if _is_one(lv[i], le[i], unit_tol, prec)]
    translations = [i for i in unit if not _is_zero(bv[i], be[i])]

    if not any(alpha):
        if translations:
            return Classification(YES, UNKNOWN, UNKNOWN, "composition-runaway",
                                  f"alpha = 0 and coordinate {translations[0] + 1} is a translation: the symbol is runaway",
                                  {"runaway_coordinate": translations[0]})
        fp = _diag_fixed_point(lv, bv, unit, prec)
        return _no("composition-not-runaway", "alpha = 0 and the symbol has a fixed point", fixed_point=fp)

    sign, modulus = _abs_lambda_alpha_sign(lv, le, alpha, prec)
    if sign is None:
        if translations:
            return Classification(YES, MIXING, _fhc_case_b(lv, le, prec), "boundary-ambiguous",
                                  "|lambda^alpha| is within the ambiguity band around 1, but a translation "
                                  "coordinate makes the operator mixing either way",
                                  {"lambda_alpha_modulus": modulus, "band": _band(prec),
                                   "runaway_coordinate": translations[0]})
        return Classification(UNKNOWN, UNKNOWN, UNKNOWN, "boundary-ambiguous",
                              "|lambda^alpha| is within the ambiguity band around 1 at working precision",
                              {"lambda_alpha_modulus": modulus, "band": _band(prec)})
    if sign >= 0:
        return Classification(YES, SMG, YES, "3a", "|lambda^alpha| >= 1: strongly mixing in the Gaussian sense",
                              {"lambda_alpha_modulus": modulus})
    if translations:
        fhc = _fhc_case_b(lv, le, prec)
        why = "all |lambda_i| <= 1, so the operator is Runge transitive" if fhc == YES else \
            "some |lambda_i| > 1: frequent hypercyclicity is open"
        return Classification(YES, MIXING, fhc, "3b",
                              f"coordinate {translations[0] + 1} is a translation (lambda = 1, b != 0): mixing; {why}",
                              {"runaway_coordinate": translations[0], "lambda_alpha_modulus": modulus})

    subcases = []
    if all(_is_zero(x, e) for x, e in zip(bv, be)):
        subcases.append("3c-i")
    if not unit:
        subcases.append("3c-ii")
    subcases.append("3c-iii")
    label = "3c-iii" if unit else subcases[0]
    return _no(label, "|lambda^alpha| < 1 and no coordinate is a translation: "
                      "the orbit at the fixed point decays",
               fixed_point=_diag_fixed_point(lv, bv, unit, prec), subcases=subcases,
               lambda_alpha_modulus=modulus)


def _diag_fixed_point(lv, bv, unit, prec):
    with precision(prec):
        return tuple(mpc(0) if i in unit else bv[i] / (1 - lv[i]) for i in range(len(lv)))


# ----------------------------------------------------------------------------
# general affine symbols


@dataclass(frozen=True)
class RunawayResult:
    runaway: bool
    fixed_point: tuple | None
    residual: object
    rank: int
    tol: object
    invertible: bool

    def __bool__(self) -> bool:
        return self.runaway


def is_runaway_affine(A, b, prec: int = DEFAULT_PREC, tol=None) -> RunawayResult:
    """Rank test on ``(I - A | b)``: runaway iff ``b`` is not in ``Ran(I - A)``."""
    n = len(b)
    if len(A) != n or any(len(r) != n for r in A):
        raise DimensionError("A must be N x N with b of length N")
    with precision(prec):
        A = tuple(vector(r) for r in A)
        b = vector(b)
        tol = linalg.default_tol() if tol is None else mpfr(tol)
        M = linalg.sub(linalg.identity(n), A)
        el = linalg.solve_ranked(M, b, tol)
        inv = linalg.is_invertible(A)
        return RunawayResult(el.solution is None, el.solution, el.residual, el.rank, tol, inv)


def bound_sequence(A, v, k_max: int, prec: int = DEFAULT_PREC) -> list:
    """``k! prod_{i<k} ||A^i v||`` for ``k = 1..k_max`` (Euclidean norms)."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    with precision(prec):
        A = tuple(vector(r) for r in A)
        w = vector(v)
        if all(x == 0 for x in w):
            raise ValueError("v must be nonzero")
        out = []
        acc = mpfr(1)
        for k in range(1, k_max + 1):
            acc *= k * norm2(w)
            out.append(acc)
            w = linalg.matvec(A, w)
        return out


def _decay_prefix(A, v, prec, threshold, cap=SEQUENCE_CAP):
    """Extend the bound sequence until it is below ``threshold`` and decreasing; returns (seq, certified)."""
    k = 64
    while True:
        seq = bound_sequence(A, v, k, prec)
        if seq[-1] < threshold and len(seq) >= 2 and seq[-1] < seq[-2]:
            return seq, True
        if k >= cap:
            return seq, False
        k = min(cap, 2 * k)


def _eventually_decreasing_from(seq) -> int:
    i = len(seq) - 1
    while i > 0 and seq[i] < seq[i - 1]:
        i -= 1
    return i + 1  # 1-based k from which the sequence decreases


def classify_directional(A, b, v, prec: int = DEFAULT_PREC, hints: Sequence = (), tol=None) -> Classification:
    """Verdict for ``f -> D_v f(A z + b)``.

    ``hints`` are bases of subspaces to try, for the decay test (invariant,
    spectral radius < 1) and the expansion test (reducing, ``||(A|_M)^-1|| < 1``).
    The Krylov space of v, the smallest invariant subspace holding v, is always
    tried for decay.
    """
    n = len(b)
    if len(A) != n or len(v) != n or any(len(r) != n for r in A):
        raise DimensionError("A must be N x N with b and v of length N")
    with precision(prec):
        A = tuple(vector(r) for r in A)
        b = vector(b)
        v = vector(v)
        if all(x == 0 for x in v):
            raise ValueError("v must be nonzero")
        tol = linalg.default_tol() if tol is None else mpfr(tol)
        if not linalg.is_invertible(A):
            raise linalg.SingularMatrixError("A must be invertible")
        run = is_runaway_affine(A, b, prec, tol)
        if run.runaway:
            return Classification(YES, MIXING, UNKNOWN, "dir-no-fixed-point",
                                  "phi has no fixed point (b not in Ran(I - A)): mixing",
                                  {"residual": run.residual, "rank": run.rank, "tol": tol})
        z0 = run.fixed_point
        scale = max(mpfr(1), linalg.frobenius(A))

        candidates = []
        for h in hints:
            basis = linalg.orthonormalize([vector(q) for q in h], tol)
            if basis:
                candidates.append(("hint", basis))
        candidates.append(("krylov", linalg.krylov_basis(A, v, tol)))

        for source, basis in candidates:
            if not _in_span(basis, v, tol):
                continue
            if linalg.invariance_defect(A, basis) > tol * scale:
                continue
            rho = linalg.spectral_radius_bound(linalg.restrict(A, basis))
            if rho * (1 + tol) < 1:
                seq, certified = _decay_prefix(A, v, prec, mpfr(2) ** -64)
                return _no("dir-decay",
                           "phi has a fixed point and v lies in an invariant subspace where A has spectral radius < 1",
                           fixed_point=z0, subspace_source=source, subspace_dim=len(basis),
                           spectral_radius_bound=rho, bound_sequence=seq, sequence_certified=certified,
                           decreasing_from=_eventually_decreasing_from(seq))

        for source, basis in candidates:
            if not _in_span(basis, v, tol):
                continue
            if linalg.invariance_defect(A, basis) > tol * scale:
                continue
            comp = linalg.complement_basis(basis, n)
            if comp and linalg.invariance_defect(A, comp) > tol * scale:
                continue
            try:
                inv = linalg.inverse(linalg.restrict(A, basis))
            except linalg.SingularMatrixError:
                continue
            sigma = linalg.operator_norm_bound(inv)
            if sigma * (1 + tol) < 1:
                return Classification(YES, SMG, YES, "dir-expansive",
                                      "phi has a fixed point and v lies in a reducing subspace M with ||(A|_M)^-1|| < 1",
                                      {"fixed_point": z0, "subspace_source": source, "subspace_dim": len(basis),
                                       "inverse_norm_bound": sigma})

        seq = bound_sequence(A, v, 64, prec)
        advisory = None
        if seq[-1] < seq[-2] and seq[-1] < mpfr(2) ** -64:
            advisory = "bound sequence prefix decays, but no structural certificate was found"
        data = {"fixed_point": z0, "bound_sequence": seq[:16]}
        if advisory:
            data["advisory"] = advisory
        return Classification(UNKNOWN, UNKNOWN, UNKNOWN, "dir-unknown",
                              "phi has a fixed point but neither the decay nor the expansion condition was certified",
                              data)


def _in_span(basis, v, tol):
    w = tuple(v)
    for q in basis:
        c = hermitian_inner(w, q)
        w = tuple(x - c * y for x, y in zip(w, q))
    return norm2(w) <= tol * norm2(v)


def classify_operator(T) -> Classification:
    """Classify a :class:`~hypercyclic.ops.DiagonalOperator` or ``DirectionalOperator``."""
    from .ops import DiagonalOperator, DirectionalOperator

    if isinstance(T, DiagonalOperator):
        lam = T.lam_exact if T.lam_exact is not None else T.lam
        b = T.b_exact if T.b_exact is not None else T.b
        return classify_diagonal(lam, b, T.alpha, T.prec, T.unit_tol)
    if isinstance(T, DirectionalOperator):
        return classify_directional(T.A, T.b, T.v, T.prec)
    raise TypeError(f"cannot classify {type(T).__name__}")
