"""NumPy reference implementation of the factorization kernels.

Semantics are shared with the compiled core (`_core.pyx`):

* Householder QR, optionally with Businger-Golub column pivoting: at each
  step the remaining column of largest 2-norm is chosen, ties broken by
  the lowest column index.
* Column norms are downdated with the standard recurrence and recomputed
  from scratch once cancellation exceeds a factor 100 (1e4 on squares).
* Back-substitution for upper-triangular systems with multiple right-hand
  sides.

Both backends mutate their array arguments in place and are selected in
`kernels.__init__`.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

# squared norm ratio below which a remaining column norm is recomputed
_RECOMPUTE_RATIO = 1e-4


def qr_inplace(r: np.ndarray, b: np.ndarray, pivoting: bool, want_q: bool):
    """Householder QR of `r` (m, n), overwritten with the triangular factor.

    `b` (m, k) is overwritten with Q^T b (pass an (m, 0) array when unused).
    Returns (perm, q): perm[j] is the original index of output column j
    (identity without pivoting); q is the full m-by-m orthogonal factor or
    None unless `want_q`.
    """
    m, n = r.shape
    perm = np.arange(n, dtype=np.int64)
    norms2 = np.einsum("ij,ij->j", r, r)
    ref2 = norms2.copy()
    reflectors: list[tuple[int, np.ndarray, float]] = []
    kmax = min(m, n)
    for k in range(kmax):
        if pivoting:
            j = k + int(np.argmax(norms2[k:]))  # first max -> lowest index
            if j != k:
                r[:, [k, j]] = r[:, [j, k]]
                perm[[k, j]] = perm[[j, k]]
                norms2[[k, j]] = norms2[[j, k]]
                ref2[[k, j]] = ref2[[j, k]]
        x0 = float(r[k, k])
        tail = r[k + 1 :, k]
        s_below = float(tail @ tail)
        if s_below != 0.0:
            s = s_below + x0 * x0
            normx = np.sqrt(s)
            alpha = -normx if x0 >= 0.0 else normx
            v = r[k:, k].copy()
            v[0] = x0 - alpha
            tau = 2.0 / (s_below + v[0] * v[0])
            if k + 1 < n:
                r[k:, k + 1 :] -= np.outer(tau * v, v @ r[k:, k + 1 :])
            if b.shape[1]:
                b[k:, :] -= np.outer(tau * v, v @ b[k:, :])
            r[k, k] = alpha
            r[k + 1 :, k] = 0.0
            if want_q:
                reflectors.append((k, v, tau))
        elif x0 == 0.0 and pivoting:
            break  # the largest remaining column is entirely zero: done
        # else: the column is already triangular; no reflector (tau = 0)
        if pivoting and k + 1 < n:
            head = r[k, k + 1 :]
            norms2[k + 1 :] -= head * head
            np.maximum(norms2[k + 1 :], 0.0, out=norms2[k + 1 :])
            stale = np.nonzero(norms2[k + 1 :] < ref2[k + 1 :] * _RECOMPUTE_RATIO)[0]
            for off in stale:
                j = k + 1 + int(off)
                fresh = float(np.einsum("i,i->", r[k + 1 :, j], r[k + 1 :, j]))
                norms2[j] = fresh
                ref2[j] = fresh
    q = None
    if want_q:
        q = np.eye(m)
        for k, v, tau in reversed(reflectors):
            q[k:, :] -= np.outer(tau * v, v @ q[k:, :])
    return perm, q


def solve_upper_inplace(u: np.ndarray, x: np.ndarray) -> None:
    """Overwrite `x` (r, k) with the solution of U X = x for upper-triangular
    `u` (r, r). Diagonal entries are assumed nonzero; callers guard."""
    for i in range(u.shape[0] - 1, -1, -1):
        if i + 1 < u.shape[0]:
            x[i, :] -= u[i, i + 1 :] @ x[i + 1 :, :]
        x[i, :] /= u[i, i]
