"""Pure numpy log-determinant kernels.

Fallback backend used when the compiled extension is unavailable (or when
forced via ``HOINFO_BACKEND=python``). Same contract as ``_kernels_cy``:
every function returns NaN (never raises) when a matrix is not numerically
positive definite, and callers translate NaN into ``SingularSubmatrix``.
"""
import numpy as np

_NAN = float("nan")


def logdet_spd(a):
    """Log-determinant of a symmetric positive-definite matrix via Cholesky.

    Returns NaN if the factorization fails.
    """
    try:
        c = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return _NAN
    return 2.0 * float(np.log(np.diagonal(c)).sum())


def subset_logdet(r, idx):
    """Log-determinant of the principal submatrix r[idx][:, idx]."""
    return logdet_spd(r[np.ix_(idx, idx)])


def deletion_logdets(r, idx):
    """Log-determinants needed by the one-element-deletion measures.

    Returns ``(full, dels)`` where ``full`` is the log-determinant of the
    subset submatrix and ``dels[i]`` the log-determinant with the i-th
    subset member removed. NaN-poisoned on non-PD selections.
    """
    idx = np.asarray(idx, dtype=np.intp)
    k = idx.shape[0]
    sub = r[np.ix_(idx, idx)]
    full = logdet_spd(sub)
    if np.isnan(full):
        return _NAN, np.full(k, _NAN)
    if k == 1:
        # deleting the only member leaves the empty system (log det 1 = 0)
        return full, np.zeros(1)
    dels = np.empty((k, k - 1, k - 1))
    rows = np.arange(k)
    for d in range(k):
        keep = np.concatenate([rows[:d], rows[d + 1:]])
        dels[d] = sub[np.ix_(keep, keep)]
    try:
        chol = np.linalg.cholesky(dels)
        out = 2.0 * np.log(np.diagonal(chol, axis1=1, axis2=2)).sum(axis=1)
    except np.linalg.LinAlgError:
        # batched cholesky fails as a whole; fall back per deletion
        out = np.array([logdet_spd(dels[d]) for d in range(k)])
    return full, out


def batch_subset_logdet(r, subsets):
    """Log-determinant for each row of a (m, i) index matrix.

    Rows whose submatrix is not PD come back as NaN.
    """
    subsets = np.asarray(subsets, dtype=np.intp)
    if subsets.ndim != 2:
        raise ValueError("subsets must be a 2-d index array")
    m, i = subsets.shape
    if i == 1:
        return np.zeros(m)
    subs = r[subsets[:, :, None], subsets[:, None, :]]
    try:
        chol = np.linalg.cholesky(subs)
        return 2.0 * np.log(np.diagonal(chol, axis1=1, axis2=2)).sum(axis=1)
    except np.linalg.LinAlgError:
        return np.array([logdet_spd(subs[j]) for j in range(m)])
