"""Pure numpy versions of the double-precision kernels in ``_kernels.pyx``."""

import numpy as np

_CHUNK = 4096


def eval_terms(coeffs, gammas, betas, points):
    """Evaluate ``sum_k c_k exp(gamma_k . z) z^beta_k`` at every row of ``points``."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    gammas = np.asarray(gammas, dtype=np.complex128)
    betas = np.asarray(betas, dtype=np.int64)
    points = np.asarray(points, dtype=np.complex128)
    P, N = points.shape
    out = np.empty(P, dtype=np.complex128)
    has_exp = bool(np.any(gammas != 0))
    for s in range(0, P, _CHUNK):
        pts = points[s:s + _CHUNK]
        vals = np.broadcast_to(coeffs, (pts.shape[0], coeffs.shape[0])).copy()
        if has_exp:
            vals *= np.exp(pts @ gammas.T)
        for i in range(N):
            col = betas[:, i]
            if np.any(col):
                vals *= pts[:, i:i + 1] ** col[None, :]
        out[s:s + _CHUNK] = vals.sum(axis=1)
    return out


def basis_matrix(points, betas):
    """Matrix ``M[p, k] = prod_i points[p, i] ** betas[k, i]``."""
    points = np.asarray(points, dtype=np.complex128)
    betas = np.asarray(betas, dtype=np.int64)
    M = np.ones((points.shape[0], betas.shape[0]), dtype=np.complex128)
    for i in range(points.shape[1]):
        col = betas[:, i]
        if np.any(col):
            M *= points[:, i:i + 1] ** col[None, :]
    return M
