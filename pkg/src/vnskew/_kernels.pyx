# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels: cyclic Jacobi eigenvalues of small Hermitian matrices."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, log

cnp.import_array()

ctypedef double complex cplx


cdef inline double _abs2(cplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef int _jacobi_one(cplx[:, ::1] a, double[::1] out, double tol_factor, int max_sweeps) noexcept nogil:
    """Diagonalize one Hermitian matrix in place; returns sweeps used or -1 on failure."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t p, q, r
    cdef double trace = 0.0, off, b, theta, t, c, s, app, aqq
    cdef cplx phase, arp, arq
    cdef int sweep
    for p in range(m):
        trace += a[p, p].real
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(m):
            for q in range(p + 1, m):
                off += 2.0 * _abs2(a[p, q])
        if sqrt(off) <= tol_factor * fabs(trace):
            for p in range(m):
                out[p] = a[p, p].real
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(m):
            for q in range(p + 1, m):
                b = sqrt(_abs2(a[p, q]))
                if b == 0.0:
                    continue
                phase = a[p, q] / b
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * b)
                if theta >= 0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for r in range(m):
                    if r == p or r == q:
                        continue
                    arp = a[r, p]
                    arq = a[r, q] * phase.conjugate()
                    a[r, p] = c * arp - s * arq
                    a[r, q] = s * arp + c * arq
                    a[p, r] = a[r, p].conjugate()
                    a[q, r] = a[r, q].conjugate()
                a[p, p] = app - t * b
                a[q, q] = aqq + t * b
                a[p, q] = 0
                a[q, p] = 0
    return -1


def jacobi_eigvals_batch(cplx[:, :, ::1] mats, double tol_factor=1e-12, int max_sweeps=100):
    """Eigenvalues of each Hermitian matrix in a (B, m, m) stack; the stack is overwritten.

    Returns (values (B, m) unsorted, sweeps (B,) with -1 marking non-convergence).
    """
    cdef Py_ssize_t nb = mats.shape[0], m = mats.shape[1], i
    vals_arr = np.empty((nb, m), dtype=np.float64)
    sweeps_arr = np.empty(nb, dtype=np.intc)
    cdef double[:, ::1] vals = vals_arr
    cdef int[::1] sweeps = sweeps_arr
    with nogil:
        for i in range(nb):
            sweeps[i] = _jacobi_one(mats[i], vals[i], tol_factor, max_sweeps)
    return vals_arr, sweeps_arr


def entropy_batch(double[:, ::1] lam):
    """-sum lam ln lam per row with 0 ln 0 = 0."""
    cdef Py_ssize_t nb = lam.shape[0], m = lam.shape[1], i, j
    out_arr = np.empty(nb, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc, x
    with nogil:
        for i in range(nb):
            acc = 0.0
            for j in range(m):
                x = lam[i, j]
                if x > 0.0:
                    acc -= x * log(x)
            out[i] = acc
    return out_arr
