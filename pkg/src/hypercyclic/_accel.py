"""Pick the compiled kernels when available, else the numpy fallback.

Set ``HYPERCYCLIC_PURE=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("HYPERCYCLIC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        class _Compiled:
            @staticmethod
            def eval_terms(coeffs, gammas, betas, points):
                return _compiled.eval_terms(
                    np.ascontiguousarray(coeffs, dtype=np.complex128),
                    np.ascontiguousarray(gammas, dtype=np.complex128),
                    np.ascontiguousarray(betas, dtype=np.int_),
                    np.ascontiguousarray(points, dtype=np.complex128),
                )

            @staticmethod
            def basis_matrix(points, betas):
                return _compiled.basis_matrix(
                    np.ascontiguousarray(points, dtype=np.complex128),
                    np.ascontiguousarray(betas, dtype=np.int_),
                )

        kernels = _Compiled
        BACKEND = "cython"
