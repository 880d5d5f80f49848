# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Householder kernels.

Same contract as `kernels.fallback`: greedy column pivoting on the largest
remaining 2-norm (ties to the lowest index), norm downdating with a
factor-100 recomputation guard, in-place triangular back-substitution.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

cdef double RECOMPUTE_RATIO = 1e-4

BACKEND_NAME = "compiled"


def qr_inplace(double[:, ::1] r, double[:, ::1] b, bint pivoting, bint want_q):
    """Householder QR of `r` (m, n) in place; `b` (m, k) becomes Q^T b.

    Returns (perm, q) with q None unless `want_q`.
    """
    cdef Py_ssize_t m = r.shape[0]
    cdef Py_ssize_t n = r.shape[1]
    cdef Py_ssize_t nb = b.shape[1]
    cdef Py_ssize_t kmax = m if m < n else n
    cdef Py_ssize_t i, j, k, jbest
    cdef cnp.int64_t ptmp
    cdef double s, best, tmp, normx, alpha, v0, vtv, tau, dot, head, x0

    perm_arr = np.arange(n, dtype=np.int64)
    norms2_arr = np.empty(n)
    ref2_arr = np.empty(n)
    vs_arr = np.zeros((m, kmax if want_q else 0))
    taus_arr = np.zeros(kmax if want_q else 0)
    q_arr = np.eye(m) if want_q else np.zeros((0, 0))

    cdef cnp.int64_t[::1] perm = perm_arr
    cdef double[::1] norms2 = norms2_arr
    cdef double[::1] ref2 = ref2_arr
    cdef double[:, ::1] vs = vs_arr
    cdef double[::1] taus = taus_arr
    cdef double[:, ::1] q = q_arr

    for j in range(n):
        s = 0.0
        for i in range(m):
            s += r[i, j] * r[i, j]
        norms2[j] = s
        ref2[j] = s

    for k in range(kmax):
        if pivoting:
            jbest = k
            best = norms2[k]
            for j in range(k + 1, n):
                if norms2[j] > best:
                    best = norms2[j]
                    jbest = j
            if jbest != k:
                for i in range(m):
                    tmp = r[i, k]
                    r[i, k] = r[i, jbest]
                    r[i, jbest] = tmp
                ptmp = perm[k]
                perm[k] = perm[jbest]
                perm[jbest] = ptmp
                tmp = norms2[k]
                norms2[k] = norms2[jbest]
                norms2[jbest] = tmp
                tmp = ref2[k]
                ref2[k] = ref2[jbest]
                ref2[jbest] = tmp
        x0 = r[k, k]
        s_below = 0.0
        for i in range(k + 1, m):
            s_below += r[i, k] * r[i, k]
        if s_below != 0.0:
            s = s_below + x0 * x0
            normx = sqrt(s)
            alpha = -normx if x0 >= 0.0 else normx
            v0 = x0 - alpha
            vtv = s_below + v0 * v0
            tau = 2.0 / vtv
            # reflector v = (v0, r[k+1:, k]); the tail still holds the raw column
            for j in range(k + 1, n):
                dot = v0 * r[k, j]
                for i in range(k + 1, m):
                    dot += r[i, k] * r[i, j]
                dot *= tau
                r[k, j] -= dot * v0
                for i in range(k + 1, m):
                    r[i, j] -= dot * r[i, k]
            for j in range(nb):
                dot = v0 * b[k, j]
                for i in range(k + 1, m):
                    dot += r[i, k] * b[i, j]
                dot *= tau
                b[k, j] -= dot * v0
                for i in range(k + 1, m):
                    b[i, j] -= dot * r[i, k]
            if want_q:
                vs[k, k] = v0
                for i in range(k + 1, m):
                    vs[i, k] = r[i, k]
                taus[k] = tau
            r[k, k] = alpha
            for i in range(k + 1, m):
                r[i, k] = 0.0
        elif x0 == 0.0 and pivoting:
            break  # the largest remaining column is entirely zero: done
        # else: the column is already triangular; no reflector (tau = 0)
        if pivoting:
            for j in range(k + 1, n):
                head = r[k, j]
                s = norms2[j] - head * head
                if s < 0.0:
                    s = 0.0
                if s < ref2[j] * RECOMPUTE_RATIO:
                    s = 0.0
                    for i in range(k + 1, m):
                        s += r[i, j] * r[i, j]
                    ref2[j] = s
                norms2[j] = s

    if want_q:
        for k in range(kmax - 1, -1, -1):
            tau = taus[k]
            if tau == 0.0:
                continue
            for j in range(m):
                dot = 0.0
                for i in range(k, m):
                    dot += vs[i, k] * q[i, j]
                dot *= tau
                for i in range(k, m):
                    q[i, j] -= dot * vs[i, k]
        return perm_arr, q_arr
    return perm_arr, None


def solve_upper_inplace(double[:, ::1] u, double[:, ::1] x):
    """Overwrite `x` (r, k) with the solution of U X = x, U upper-triangular."""
    cdef Py_ssize_t rdim = u.shape[0]
    cdef Py_ssize_t ncols = x.shape[1]
    cdef Py_ssize_t i, j, l
    cdef double c, pivot
    # row-major axpy order keeps both x[l, :] and x[i, :] contiguous
    for i in range(rdim - 1, -1, -1):
        for l in range(i + 1, rdim):
            c = u[i, l]
            if c != 0.0:
                for j in range(ncols):
                    x[i, j] -= c * x[l, j]
        pivot = u[i, i]
        for j in range(ncols):
            x[i, j] /= pivot
