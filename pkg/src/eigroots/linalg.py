"""Dense linear-algebra contracts used by the solver pipeline.

QR factorizations and back-substitution run on the dual-backend kernels
(compiled or NumPy, see `kernels`); spectral quantities (SVD-based rank,
condition numbers, the dense eigensolver) delegate to LAPACK through
NumPy. Matrices are 2-D float64/complex128 arrays throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .exceptions import SingularBlockError

#: relative diagonal tolerance below which a triangular block is treated
#: as singular
SINGULAR_DIAG_RTOL = 1e-12

#: default relative singular-value tolerance for numerical rank decisions
RANK_RTOL = 1e-8


def _as_matrix(a, name: str = "matrix") -> np.ndarray:
    out = np.array(a, dtype=np.float64, order="C", copy=True)
    if out.ndim != 2 or out.size == 0:
        raise ValueError(f"{name} must be a nonempty 2-D array")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} has non-finite entries")
    return out


@dataclass(frozen=True)
class PivotedQR:
    """A P = Q R with P the permutation sending original column perm[j] to
    position j; diagonal magnitudes of R are non-increasing."""

    q: np.ndarray
    r: np.ndarray
    perm: np.ndarray


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    right_vectors: np.ndarray
    vector_condition: float


def qr_pivoted(a) -> PivotedQR:
    """Householder QR with Businger-Golub column pivoting.

    Greedily selects the remaining column of largest 2-norm (ties broken by
    the lowest column index), so |R[0,0]| >= |R[1,1]| >= ...
    """
    r = _as_matrix(a)
    empty = np.empty((r.shape[0], 0))
    perm, q = kernels.qr_inplace(r, empty, True, True)
    return PivotedQR(q=q, r=r, perm=perm)


def qr_plain(a) -> tuple[np.ndarray, np.ndarray]:
    """Householder QR without pivoting: A = Q R."""
    r = _as_matrix(a)
    empty = np.empty((r.shape[0], 0))
    _, q = kernels.qr_inplace(r, empty, False, True)
    return q, r


def qr_reduce(a: np.ndarray, carry: np.ndarray, pivoting: bool) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor `a` while applying Q^T to `carry`; Q itself is not formed.

    Returns (r, carry_out, perm). This is the workhorse for the Macaulay
    matrix reduction, where only the triangular data is needed.
    """
    r = np.array(a, dtype=np.float64, order="C", copy=True)
    carry_out = np.array(carry, dtype=np.float64, order="C", copy=True)
    perm, _ = kernels.qr_inplace(r, carry_out, pivoting, False)
    return r, carry_out, perm


def back_substitute(u, b) -> np.ndarray:
    """Solve U X = B for upper-triangular U with nonsingular diagonal.

    Raises SingularBlockError when a diagonal entry is zero or smaller than
    SINGULAR_DIAG_RTOL times the largest diagonal magnitude.
    """
    u = _as_matrix(u, "triangular factor")
    if u.shape[0] != u.shape[1]:
        raise ValueError("triangular factor must be square")
    diag = np.abs(np.diagonal(u))
    if np.any(diag == 0.0) or diag.min() < SINGULAR_DIAG_RTOL * diag.max():
        raise SingularBlockError(
            f"diagonal entry {diag.argmin()} of magnitude {diag.min():.3e} is "
            f"below tolerance relative to {diag.max():.3e}"
        )
    return solve_upper_unchecked(u, b)


def solve_upper_unchecked(u: np.ndarray, b) -> np.ndarray:
    """Back-substitution without the diagonal guard (callers who already
    validated the pivots, e.g. after a genericity check)."""
    b = np.asarray(b, dtype=np.float64)
    squeeze = b.ndim == 1
    x = np.array(b.reshape(u.shape[0], -1), dtype=np.float64, order="C", copy=True)
    kernels.solve_upper_inplace(np.ascontiguousarray(u), x)
    return x[:, 0] if squeeze else x


def condition_2norm(a) -> float:
    """sigma_max / sigma_min by full SVD; +inf when numerically singular."""
    mat = _as_matrix(a)
    svals = np.linalg.svd(mat, compute_uv=False)
    smax, smin = float(svals[0]), float(svals[-1])
    if smin == 0.0 or smin < smax * 1e-300:
        return float("inf")
    return smax / smin


def nullity(a, rel_tol: float = RANK_RTOL) -> int:
    """Dimension of the null space: columns minus the numerical rank, where
    the rank counts singular values above rel_tol * sigma_max."""
    mat = _as_matrix(a)
    svals = np.linalg.svd(mat, compute_uv=False)
    smax = float(svals[0]) if svals.size else 0.0
    rank = 0 if smax == 0.0 else int(np.count_nonzero(svals > rel_tol * smax))
    return mat.shape[1] - rank


def eig_general(a) -> EigenDecomposition:
    """Full complex spectrum with right eigenvectors of a square matrix."""
    mat = np.asarray(a)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.size == 0:
        raise ValueError("expected a nonempty square matrix")
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix has non-finite entries")
    values, vectors = np.linalg.eig(mat)
    values = values.astype(complex)
    vectors = vectors.astype(complex)
    svals = np.linalg.svd(vectors, compute_uv=False)
    cond = float("inf") if svals[-1] == 0.0 else float(svals[0] / svals[-1])
    return EigenDecomposition(values=values, right_vectors=vectors, vector_condition=cond)
