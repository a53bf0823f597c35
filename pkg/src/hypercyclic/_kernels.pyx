# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Double-precision kernels: exp-polynomial evaluation on point batches and
monomial design matrices.  ``_kernels_py`` holds the numpy equivalents.

Each point gets a table of coordinate powers up to the largest exponent in
use, so a monomial costs N table lookups instead of N repeated squarings."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin

cnp.import_array()


cdef inline double complex _cexp(double complex w) nogil:
    cdef double m = exp(w.real)
    return m * cos(w.imag) + 1j * (m * sin(w.imag))


cdef void _fill_powers(const double complex[:, ::1] points, Py_ssize_t p, Py_ssize_t D,
                       double complex[:, ::1] pw) noexcept nogil:
    cdef Py_ssize_t i, d
    for i in range(points.shape[1]):
        pw[i, 0] = 1.0
        for d in range(1, D + 1):
            pw[i, d] = pw[i, d - 1] * points[p, i]


def eval_terms(const double complex[::1] coeffs,
               const double complex[:, ::1] gammas,
               const long[:, ::1] betas,
               const double complex[:, ::1] points):
    cdef Py_ssize_t P = points.shape[0]
    cdef Py_ssize_t N = points.shape[1]
    cdef Py_ssize_t T = coeffs.shape[0]
    cdef Py_ssize_t p, k, i
    cdef Py_ssize_t D = int(np.max(betas)) if T and N else 0
    cdef double complex acc, term, w
    cdef bint any_exp = bool(np.any(np.asarray(gammas) != 0))
    out = np.empty(P, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex[:, ::1] pw = np.empty((N, D + 1), dtype=np.complex128)
    with nogil:
        for p in range(P):
            _fill_powers(points, p, D, pw)
            acc = 0.0
            for k in range(T):
                term = coeffs[k]
                for i in range(N):
                    term = term * pw[i, betas[k, i]]
                if any_exp:
                    w = 0.0
                    for i in range(N):
                        w = w + gammas[k, i] * points[p, i]
                    term = term * _cexp(w)
                acc = acc + term
            o[p] = acc
    return out


def basis_matrix(const double complex[:, ::1] points, const long[:, ::1] betas):
    cdef Py_ssize_t P = points.shape[0]
    cdef Py_ssize_t N = points.shape[1]
    cdef Py_ssize_t T = betas.shape[0]
    cdef Py_ssize_t p, k, i
    cdef Py_ssize_t D = int(np.max(betas)) if T and N else 0
    cdef double complex v
    out = np.empty((P, T), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex[:, ::1] pw = np.empty((N, D + 1), dtype=np.complex128)
    with nogil:
        for p in range(P):
            _fill_powers(points, p, D, pw)
            for k in range(T):
                v = pw[0, betas[k, 0]]
                for i in range(1, N):
                    v = v * pw[i, betas[k, i]]
                o[p, k] = v
    return out
