"""Pure-NumPy implementations of the rate-evaluation kernels.

These are the reference semantics for the compiled extension; both
backends must agree to tight floating-point tolerance (see the kernel
tests and benchmarks/bench_kernels.py).
"""

import numpy as np


def logdet_eye_plus_gram(e) -> float:
    """log2 det(I + E E^H) for a complex matrix E of shape (n, k).

    The argument ``I + E E^H`` is Hermitian positive definite by
    construction, so the Cholesky factorization cannot fail for finite
    input.  The Gram matrix is explicitly symmetrized before factoring to
    suppress roundoff asymmetry, and the determinant is accumulated in the
    log domain.
    """
    e = np.asarray(e, dtype=np.complex128)
    n, k = e.shape
    if n == 0:
        return 0.0
    if k == 0:
        return 0.0
    a = e @ e.conj().T
    a = (a + a.conj().T) * 0.5
    a.flat[:: n + 1] += 1.0
    chol = np.linalg.cholesky(a)
    diag = np.real(np.diagonal(chol))
    return float(2.0 * np.sum(np.log2(diag)))
