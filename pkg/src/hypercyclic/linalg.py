"""Dense linear algebra on small mpc matrices.

Matrices are tuples of row tuples.  Everything here runs at the caller's
gmpy2 context precision; nothing is cached between calls.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc, mpfr

from .scalar import hermitian_inner, norm2


class SingularMatrixError(ArithmeticError):
    pass


def identity(n: int):
    return tuple(tuple(mpc(1) if i == j else mpc(0) for j in range(n)) for i in range(n))


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def matmul(A, B):
    n, m = shape(A)
    m2, p = shape(B)
    if m != m2:
        raise ValueError(f"shape mismatch {n}x{m} @ {m2}x{p}")
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = mpc(0)
            for k in range(m):
                a = A[i][k]
                if a != 0:
                    b = B[k][j]
                    if b != 0:
                        acc += a * b
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def matvec(A, x):
    out = []
    for row in A:
        acc = mpc(0)
        for a, b in zip(row, x):
            if a != 0 and b != 0:
                acc += a * b
        out.append(acc)
    return tuple(out)


def transpose(A):
    return tuple(zip(*A)) if A else ()


def conj_transpose(A):
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*A))


def sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vscale(s, u):
    return tuple(s * a for a in u)


def frobenius(A):
    acc = mpfr(0)
    for row in A:
        for a in row:
            acc += gmpy2.norm(a)
    return gmpy2.sqrt(acc)


def max_abs(A):
    best = mpfr(0)
    for row in A:
        for a in row:
            best = max(best, abs(a))
    return best


def is_diagonal(A) -> bool:
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(len(A)) if i != j)


def default_tol():
    """Relative rank tolerance ``2^-(prec/2)``."""
    return mpfr(2) ** (-(gmpy2.get_context().precision // 2))


@dataclass(frozen=True)
class Elimination:
    rank: int
    solution: tuple | None
    residual: object  # mpfr, size of the inconsistent part of the rhs
    tol: object
    pivot_scale: object


def solve_ranked(A, rhs, tol=None) -> Elimination:
    """Solve ``A x = rhs`` by column-pivoted elimination.

    Pivots below ``tol * largest pivot`` are treated as zero.  Free variables
    are set to zero.  When the system is inconsistent, ``solution`` is None
    and ``residual`` is the size of the leftover right-hand side.
    """
    n, m = shape(A)
    tol = default_tol() if tol is None else mpfr(tol)
    M = [list(row) + [rhs[i]] for i, row in enumerate(A)]
    cols = list(range(m))
    rank = 0
    first_pivot = None
    for r in range(min(n, m)):
        best, bi, bj = mpfr(-1), -1, -1
        for i in range(r, n):
            for jj in range(r, m):
                v = abs(M[i][jj])
                if v > best:
                    best, bi, bj = v, i, jj
        if first_pivot is None:
            first_pivot = best if best > 0 else mpfr(0)
        if best <= 0 or best <= tol * first_pivot:
            break
        M[r], M[bi] = M[bi], M[r]
        if bj != r:
            for row in M:
                row[r], row[bj] = row[bj], row[r]
            cols[r], cols[bj] = cols[bj], cols[r]
        piv = M[r][r]
        for i in range(r + 1, n):
            if M[i][r] != 0:
                f = M[i][r] / piv
                for k in range(r, m + 1):
                    M[i][k] -= f * M[r][k]
        rank += 1
    scale = first_pivot if first_pivot else mpfr(0)
    leftover = mpfr(0)
    for i in range(rank, n):
        leftover = max(leftover, abs(M[i][m]))
    rhs_scale = max([abs(x) for x in rhs] + [mpfr(0)])
    ref = max(scale, rhs_scale, mpfr(1) if scale == 0 else mpfr(0))
    if leftover > tol * ref:
        return Elimination(rank, None, leftover, tol, scale)
    y = [mpc(0)] * m
    for r in range(rank - 1, -1, -1):
        acc = M[r][m]
        for k in range(r + 1, rank):
            acc -= M[r][k] * y[k]
        y[r] = acc / M[r][r]
    x = [mpc(0)] * m
    for pos, c in enumerate(cols):
        x[c] = y[pos]
    return Elimination(rank, tuple(x), leftover, tol, scale)


def rank(A, tol=None) -> int:
    n, _ = shape(A)
    return solve_ranked(A, (mpc(0),) * n, tol).rank


def inverse(A):
    n, _ = shape(A)
    M = [list(row) + [mpc(1) if i == j else mpc(0) for j in range(n)] for i, row in enumerate(A)]
    scale = max_abs(A)
    tol = default_tol()
    for c in range(n):
        bi = max(range(c, n), key=lambda i: abs(M[i][c]))
        if abs(M[bi][c]) <= tol * scale or M[bi][c] == 0:
            raise SingularMatrixError("matrix is singular to working precision")
        M[c], M[bi] = M[bi], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def is_invertible(A) -> bool:
    try:
        inverse(A)
    except SingularMatrixError:
        return False
    return True


def orthonormalize(vectors, tol=None):
    """Modified Gram-Schmidt with the Hermitian inner product; drops dependent vectors."""
    tol = default_tol() if tol is None else mpfr(tol)
    basis = []
    for v in vectors:
        w = tuple(v)
        ref = norm2(w)
        for _ in range(2):
            for q in basis:
                c = hermitian_inner(w, q)
                w = tuple(a - c * b for a, b in zip(w, q))
        nw = norm2(w)
        if ref > 0 and nw > tol * ref:
            basis.append(tuple(a / nw for a in w))
    return basis


def krylov_basis(A, v, tol=None):
    """Orthonormal basis of ``span{v, Av, A^2 v, ...}``, the smallest A-invariant subspace holding v."""
    basis = orthonormalize([v], tol)
    w = tuple(v)
    n = len(v)
    for _ in range(n):
        w = matvec(A, w)
        grown = orthonormalize(basis + [w], tol)
        if len(grown) == len(basis):
            break
        basis = grown
        nw = norm2(w)
        w = tuple(a / nw for a in w)
    return basis


def restrict(A, basis):
    """Matrix of ``U^H A U`` for an orthonormal basis U (columns = basis vectors)."""
    AU = [matvec(A, q) for q in basis]
    return tuple(tuple(hermitian_inner(AU[j], basis[i]) for j in range(len(basis))) for i in range(len(basis)))


def invariance_defect(A, basis):
    """Largest norm of the component of ``A q`` orthogonal to span(basis), q in basis."""
    worst = mpfr(0)
    for q in basis:
        w = matvec(A, q)
        for b in basis:
            c = hermitian_inner(w, b)
            w = tuple(x - c * y for x, y in zip(w, b))
        worst = max(worst, norm2(w))
    return worst


def complement_basis(basis, n):
    eye = [tuple(mpc(1) if i == j else mpc(0) for j in range(n)) for i in range(n)]
    full = orthonormalize(list(basis) + eye)
    return full[len(basis):]


def spectral_radius_bound(B, squarings: int = 10):
    """Rigorous-up-to-rounding upper bound on the spectral radius.

    Uses ``r(B) <= ||B^p||_F^(1/p)`` for ``p = 2^k``; returns the smallest value
    seen over ``k <= squarings``.
    """
    if not B:
        return mpfr(0)
    best = frobenius(B)
    P = B
    p = 1
    for _ in range(squarings):
        P = matmul(P, P)
        p *= 2
        f = frobenius(P)
        if f == 0:
            return mpfr(0)
        best = min(best, f ** (mpfr(1) / p))
        # rescale to keep exponents tame
        s = max_abs(P)
        if s > mpfr(2) ** 512 or s < mpfr(2) ** -512:
            break
    return best


def operator_norm_bound(B, squarings: int = 10):
    """Upper bound on the spectral (2-)norm: ``sqrt(r(B^H B))`` via the Frobenius power bound."""
    C = matmul(conj_transpose(B), B)
    return gmpy2.sqrt(spectral_radius_bound(C, squarings))
