# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled rate-evaluation kernels.

Mirrors kernels/fallback.py: log-determinants of Gram forms via an
unblocked complex Cholesky factorization.  Matrices here are tiny (a few
rows per receive antenna), where the fused single pass beats dispatching
several NumPy temporaries.
"""

from libc.math cimport log2, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()


def logdet_eye_plus_gram(e) -> float:
    """log2 det(I + E E^H) for a complex matrix E of shape (n, k)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] ec = \
        np.ascontiguousarray(e, dtype=np.complex128)
    cdef Py_ssize_t n = ec.shape[0]
    cdef Py_ssize_t k = ec.shape[1]
    if n == 0 or k == 0:
        return 0.0

    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] a = \
        np.empty((n, n), dtype=np.complex128)

    cdef Py_ssize_t i, j, t
    cdef double acc_re, acc_im
    cdef double complex eit, ejt

    # Lower triangle of I + E E^H; the Gram form is Hermitian by
    # construction so the upper triangle is never touched.
    for i in range(n):
        for j in range(i + 1):
            acc_re = 0.0
            acc_im = 0.0
            for t in range(k):
                eit = ec[i, t]
                ejt = ec[j, t]
                acc_re += eit.real * ejt.real + eit.imag * ejt.imag
                acc_im += eit.imag * ejt.real - eit.real * ejt.imag
            if i == j:
                a[i, j] = acc_re + 1.0
            else:
                a[i, j] = acc_re + 1j * acc_im

    # In-place unblocked Cholesky on the lower triangle, accumulating
    # log2 det = sum of log2 of the pivots.
    cdef double logdet = 0.0
    cdef double d, droot
    cdef double complex s, ljt

    for j in range(n):
        d = a[j, j].real
        for t in range(j):
            ljt = a[j, t]
            d -= ljt.real * ljt.real + ljt.imag * ljt.imag
        if d <= 0.0:
            raise ValueError("Gram form lost positive definiteness")
        logdet += log2(d)
        droot = sqrt(d)
        a[j, j] = droot
        for i in range(j + 1, n):
            s = a[i, j]
            for t in range(j):
                s = s - a[i, t] * a[j, t].conjugate()
            a[i, j] = s / droot

    return logdet
