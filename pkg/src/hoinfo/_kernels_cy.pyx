# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled log-determinant kernels.

Hot path of the sampling / annealing / TSE loops: gather a principal
submatrix and Cholesky-factor it. Same contract as ``_kernels_py``:
NaN (never an exception) signals a non-PD selection.
"""
from libc.math cimport log, sqrt, NAN, isnan

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef double _cholesky_logdet(double* a, Py_ssize_t n) noexcept nogil:
    # In-place lower Cholesky on a row-major buffer; returns log det or NaN.
    cdef Py_ssize_t i, j, p
    cdef double s, d
    cdef double acc = 0.0
    for j in range(n):
        s = a[j * n + j]
        for p in range(j):
            s -= a[j * n + p] * a[j * n + p]
        if s <= 0.0:
            return NAN
        d = sqrt(s)
        a[j * n + j] = d
        acc += log(d)
        for i in range(j + 1, n):
            s = a[i * n + j]
            for p in range(j):
                s -= a[i * n + p] * a[j * n + p]
            a[i * n + j] = s / d
    return 2.0 * acc


cdef void _gather(const double[:, :] r, const Py_ssize_t* idx, Py_ssize_t k,
                  double* buf) noexcept nogil:
    cdef Py_ssize_t i, j
    for i in range(k):
        for j in range(k):
            buf[i * k + j] = r[idx[i], idx[j]]


def logdet_spd(a):
    """Log-determinant of an SPD matrix via Cholesky; NaN if not PD."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] work = np.array(a, dtype=np.float64, order="C")
    cdef Py_ssize_t n = work.shape[0]
    cdef double out
    with nogil:
        out = _cholesky_logdet(<double*> work.data, n)
    return out


def subset_logdet(r, idx):
    """Log-determinant of the principal submatrix r[idx][:, idx]."""
    cdef const double[:, :] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1, mode="c"] iv = np.ascontiguousarray(idx, dtype=np.intp)
    cdef Py_ssize_t k = iv.shape[0]
    cdef cnp.ndarray[double, ndim=2, mode="c"] buf = np.empty((k, k))
    cdef double out
    with nogil:
        _gather(rv, <Py_ssize_t*> iv.data, k, <double*> buf.data)
        out = _cholesky_logdet(<double*> buf.data, k)
    return out


def deletion_logdets(r, idx):
    """(full, dels): subset log-det plus the k single-deletion log-dets."""
    cdef const double[:, :] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1, mode="c"] iv = np.ascontiguousarray(idx, dtype=np.intp)
    cdef Py_ssize_t k = iv.shape[0]
    cdef cnp.ndarray[double, ndim=2, mode="c"] sub = np.empty((k, k))
    cdef cnp.ndarray[double, ndim=2, mode="c"] buf = np.empty((k, k))
    cdef cnp.ndarray[double, ndim=1, mode="c"] dels = np.empty(k)
    cdef double* subp = <double*> sub.data
    cdef double* bufp = <double*> buf.data
    cdef double* delp = <double*> dels.data
    cdef Py_ssize_t d, i, j, ii, jj, km1
    cdef double full
    if k == 1:
        full = subset_logdet(r, iv)
        return full, np.zeros(1)
    with nogil:
        _gather(rv, <Py_ssize_t*> iv.data, k, subp)
        # factor a copy; keep the gathered submatrix intact for the deletions
        for i in range(k * k):
            bufp[i] = subp[i]
        full = _cholesky_logdet(bufp, k)
        if isnan(full):
            for d in range(k):
                delp[d] = NAN
        else:
            km1 = k - 1
            for d in range(k):
                ii = 0
                for i in range(k):
                    if i == d:
                        continue
                    jj = 0
                    for j in range(k):
                        if j == d:
                            continue
                        bufp[ii * km1 + jj] = subp[i * k + j]
                        jj += 1
                    ii += 1
                delp[d] = _cholesky_logdet(bufp, km1)
    return full, dels


def batch_subset_logdet(r, subsets):
    """Log-determinant for each row of a (m, i) index matrix; NaN rows for non-PD."""
    cdef const double[:, :] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=2, mode="c"] sv = np.ascontiguousarray(subsets, dtype=np.intp)
    cdef Py_ssize_t m = sv.shape[0]
    cdef Py_ssize_t k = sv.shape[1]
    cdef cnp.ndarray[double, ndim=1, mode="c"] out = np.empty(m)
    cdef cnp.ndarray[double, ndim=2, mode="c"] buf = np.empty((k, k))
    cdef double* bufp = <double*> buf.data
    cdef double* outp = <double*> out.data
    cdef Py_ssize_t* base = <Py_ssize_t*> sv.data
    cdef Py_ssize_t row
    with nogil:
        for row in range(m):
            _gather(rv, base + row * k, k, bufp)
            outp[row] = _cholesky_logdet(bufp, k)
    return out
