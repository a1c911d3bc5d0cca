"""Shared helpers and independent oracles for the test suite.

Oracles here deliberately avoid the library's SVD-based code paths:
rank is computed by pivoted Gaussian elimination and intersection
dimensions by principal angles, so the checks stay independent of what
they verify.
"""

import numpy as np


def crandn(gen: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Unit-variance circularly-symmetric complex Gaussian matrix."""
    return (gen.standard_normal((rows, cols)) + 1j * gen.standard_normal((rows, cols))) / np.sqrt(2.0)


def elimination_rank(a, tol: float = 1e-8) -> int:
    """Rank via Gaussian elimination with partial pivoting (no SVD)."""
    work = np.array(a, dtype=np.complex128)
    rows, cols = work.shape
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        pivot = row + int(np.argmax(np.abs(work[row:, col])))
        if np.abs(work[pivot, col]) <= tol:
            continue
        work[[row, pivot]] = work[[pivot, row]]
        work[row] = work[row] / work[row, col]
        for other in range(rows):
            if other != row:
                work[other] = work[other] - work[other, col] * work[row]
        row += 1
        rank += 1
    return rank


def principal_angle_intersection_dim(qa, qb, tol: float = 1e-8) -> int:
    """Intersection dimension via principal angles between orthonormal bases."""
    if qa.shape[1] == 0 or qb.shape[1] == 0:
        return 0
    cosines = np.linalg.svd(qa.conj().T @ qb, compute_uv=False)
    return int(np.count_nonzero(cosines >= 1.0 - tol))


def max_abs(mat) -> float:
    mat = np.asarray(mat)
    return float(np.abs(mat).max()) if mat.size else 0.0


def ks_statistic(samples, cdf) -> float:
    """Two-sided Kolmogorov-Smirnov statistic against a given CDF."""
    xs = np.sort(np.asarray(samples, dtype=float))
    n = len(xs)
    theoretical = cdf(xs)
    empirical_hi = np.arange(1, n + 1) / n
    empirical_lo = np.arange(0, n) / n
    return float(np.max(np.maximum(np.abs(empirical_hi - theoretical),
                                   np.abs(theoretical - empirical_lo))))
