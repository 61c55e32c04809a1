# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled grid kernels: discrete graph-area objective and its gradient."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def discrete_volume_and_grad(theta, cos_mid, tan_mid, double dalpha,
                             double dbeta, double jump):
    """Same contract as the numpy fallback; see fallback.py."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cm = np.ascontiguousarray(cos_mid, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tm = np.ascontiguousarray(tan_mid, dtype=np.float64)
    cdef Py_ssize_t na = th.shape[0]
    cdef Py_ssize_t nb = th.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] grad = np.zeros((na, nb), dtype=np.float64)

    cdef double value = 0.0
    cdef Py_ssize_t i, j, jp
    cdef double t00, t01, t10, t11, db, da, slope, th2, s, w, gs, g2, wrap
    cdef double inv2db = 1.0 / (2.0 * dbeta)
    cdef double inv2da = 1.0 / (2.0 * dalpha)
    cdef double cell = dalpha * dbeta

    for i in range(na - 1):
        for j in range(nb):
            jp = j + 1
            wrap = 0.0
            if jp == nb:
                jp = 0
                wrap = jump
            t00 = th[i, j]
            t01 = th[i, jp] + wrap
            t10 = th[i + 1, j]
            t11 = th[i + 1, jp] + wrap
            db = ((t01 + t11) - (t00 + t10)) * inv2db
            da = ((t10 + t11) - (t00 + t01)) * inv2da
            slope = tm[i] + db / cm[i]
            th2 = -da
            s = sqrt(1.0 + slope * slope + th2 * th2)
            w = cm[i] * cell
            value += s * w
            gs = w * slope / (s * 2.0 * dbeta * cm[i])
            g2 = w * th2 / (s * 2.0 * dalpha)
            grad[i, j] += -gs + g2
            grad[i, jp] += gs + g2
            grad[i + 1, j] += -gs - g2
            grad[i + 1, jp] += gs - g2

    return value, grad
