"""Quotient-ring basis selection and multiplication-matrix assembly.

The pipeline reduces the Macaulay matrix in two orthogonal stages: a plain
QR of the degree-t column block, then a QR of the remaining lower-right
block. With the adaptive strategy the second stage uses column pivoting
and the basis is read off as the columns the pivoting leaves for last;
with a fixed basis the requested columns are moved last verbatim. The
resulting r-by-r triangular block is inverted by back-substitution to
obtain every normal form at once, and the multiplication matrices follow
columnwise.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .exceptions import GenericityError, InvalidBasisError
from .linalg import condition_2norm, qr_reduce, solve_upper_unchecked
from .macaulay import MacaulayMatrix, bezout_number, build_macaulay
from .polynomials import Monomial, PolySystem, grading_key, monomial_degree, monomial_str

#: pivots of the inverted block smaller than this (relative to the leading
#: pivot) are treated as a genericity violation
GENERICITY_PIVOT_RTOL = 1e-12

#: dropped syzygy rows with entries above this (relative to ||M||_F) get a
#: warning: the input is probably not generic
SYZYGY_WARN_RTOL = 1e-6


@dataclass(frozen=True)
class QRPivot:
    """Adaptive basis choice via QR with optimal column pivoting."""


@dataclass(frozen=True)
class FixedBasis:
    """A caller-supplied quotient-ring basis, honored verbatim."""

    monomials: tuple[Monomial, ...]

    def __init__(self, monomials: Sequence[Monomial]):
        object.__setattr__(self, "monomials", tuple(tuple(int(e) for e in m) for m in monomials))


BasisStrategy = QRPivot | FixedBasis

QR_PIVOT = QRPivot()


def block_basis(degrees: Sequence[int]) -> list[Monomial]:
    """The classical resultant basis {x^alpha : alpha_i <= d_i - 1} in
    graded order; its top degree is sum(d_i) - n = t - 1."""
    degrees = tuple(degrees)
    if not degrees or any(d < 1 for d in degrees):
        raise ValueError("every degree must be >= 1")
    ranges = [range(d) for d in degrees]
    return sorted(itertools.product(*ranges), key=grading_key)


@dataclass(frozen=True)
class QuotientSystem:
    """Multiplication data for C[x]/I in a monomial basis of size N."""

    basis: tuple[Monomial, ...]
    normal_forms: Mapping[Monomial, np.ndarray]
    mult_matrices: tuple[np.ndarray, ...]
    inverted_block_condition: float
    basis_condition_diag: tuple[float, float]
    t: int
    support_size: int
    rank: int
    bezout: int
    pivot_diagonal: np.ndarray
    dropped_row_max: float
    strategy: str
    reduced_matrix: np.ndarray = field(repr=False)
    reduced_monomials: tuple[Monomial, ...] = field(repr=False)

    @property
    def nvars(self) -> int:
        return len(self.mult_matrices)

    def diagnostics_text(self) -> str:
        """Structured report of the reduction, one 'key: value' per line."""
        lines = [
            f"t: {self.t}",
            f"support_size: {self.support_size}",
            f"rank: {self.rank}",
            f"bezout: {self.bezout}",
            f"strategy: {self.strategy}",
            "basis: " + " ".join(monomial_str(m) for m in self.basis),
            "pivot_diagonal: " + " ".join(repr(float(v)) for v in self.pivot_diagonal),
            f"inverted_block_condition: {self.inverted_block_condition!r}",
            f"smallest_pivot: {self.basis_condition_diag[0]!r}",
            f"largest_pivot: {self.basis_condition_diag[1]!r}",
            f"dropped_row_max: {self.dropped_row_max!r}",
        ]
        return "\n".join(lines)


def _validate_fixed_basis(strategy: FixedBasis, nvars: int, t: int, n_basis: int) -> None:
    monos = strategy.monomials
    if len(monos) != n_basis:
        raise InvalidBasisError(f"fixed basis has {len(monos)} monomials, expected {n_basis}")
    if len(set(monos)) != len(monos):
        raise InvalidBasisError("fixed basis contains duplicate monomials")
    for m in monos:
        if len(m) != nvars:
            raise InvalidBasisError(f"basis monomial {m} has {len(m)} exponents, expected {nvars}")
        if any(e < 0 for e in m):
            raise InvalidBasisError(f"basis monomial {m} has a negative exponent")
        if monomial_degree(m) >= t:
            raise InvalidBasisError(
                f"basis monomial {monomial_str(m)} has degree {monomial_degree(m)}; "
                f"the basis cannot contain monomials of degree {t} or higher"
            )


def compute_quotient_system(system: PolySystem, strategy: BasisStrategy = QR_PIVOT) -> QuotientSystem:
    """Run the full reduction and return the n multiplication matrices.

    Raises GenericityError when the triangular block to invert has a pivot
    below GENERICITY_PIVOT_RTOL relative to its leading pivot, which is
    numerical evidence against the Bezout-count assumptions.
    """
    mac = build_macaulay(system)
    return _quotient_from_macaulay(mac, system, strategy)


def _quotient_from_macaulay(mac: MacaulayMatrix, system: PolySystem, strategy: BasisStrategy) -> QuotientSystem:
    n = system.nvars
    n_basis = bezout_number(system.degrees)
    n_cols = len(mac.col_monomials)
    rank = n_cols - n_basis
    c_b = mac.split
    n_interior = rank - c_b
    lower_monos = mac.col_monomials[c_b:]
    m_rows = mac.matrix.shape[0]
    if m_rows < rank:
        raise RuntimeError(
            f"Macaulay matrix has {m_rows} rows but generic rank {rank}; "
            "construction invariant violated"
        )

    # stage 1: triangularize the degree-t block, carrying Q^T into the rest
    r_border, carried, _ = qr_reduce(mac.matrix[:, :c_b], mac.matrix[:, c_b:], pivoting=False)
    top_triangular = r_border[:c_b, :]
    z_block = carried[:c_b, :]
    lower_block = carried[c_b:, :]

    # stage 2: triangularize the lower-right block; the basis columns are
    # the ones ending up in the last n_basis positions
    if isinstance(strategy, QRPivot):
        r_lower, _, order = qr_reduce(lower_block, np.empty((lower_block.shape[0], 0)), pivoting=True)
        strategy_name = "qr"
    elif isinstance(strategy, FixedBasis):
        _validate_fixed_basis(strategy, n, mac.t, n_basis)
        position = {m: j for j, m in enumerate(lower_monos)}
        try:
            basis_idx = [position[m] for m in strategy.monomials]
        except KeyError as exc:
            raise InvalidBasisError(f"basis monomial {exc.args[0]} is not in the support") from None
        chosen = set(basis_idx)
        order = np.array([j for j in range(len(lower_monos)) if j not in chosen] + basis_idx, dtype=np.int64)
        r_lower, _, _ = qr_reduce(lower_block[:, order], np.empty((lower_block.shape[0], 0)), pivoting=False)
        strategy_name = "fixed"
    else:
        raise TypeError(f"unknown basis strategy {strategy!r}")

    z_perm = z_block[:, order]
    basis = tuple(lower_monos[j] for j in order[n_interior:])
    reduced_monos = mac.col_monomials[:c_b] + tuple(lower_monos[j] for j in order)

    dropped = r_lower[n_interior:, :]
    dropped_max = float(np.abs(dropped).max()) if dropped.size else 0.0
    m_scale = float(np.linalg.norm(mac.matrix))
    if dropped_max > SYZYGY_WARN_RTOL * m_scale:
        warnings.warn(
            f"dropped syzygy rows have entries up to {dropped_max:.3e} "
            f"(matrix scale {m_scale:.3e}); the system may not be generic",
            RuntimeWarning,
            stacklevel=3,
        )

    triangular = np.zeros((rank, rank))
    triangular[:c_b, :c_b] = top_triangular
    triangular[:c_b, c_b:] = z_perm[:, :n_interior]
    triangular[c_b:, c_b:] = r_lower[:n_interior, :n_interior]
    rhs = np.vstack([z_perm[:, n_interior:], r_lower[:n_interior, n_interior:]])

    diag = np.abs(np.diagonal(triangular))
    lead = float(diag[0])
    if lead == 0.0:
        raise GenericityError(0, 0.0)
    bad = np.nonzero(diag < GENERICITY_PIVOT_RTOL * lead)[0]
    if bad.size:
        idx = int(bad[0])
        raise GenericityError(idx, float(diag[idx] / lead))

    coeffs = -solve_upper_unchecked(triangular, rhs)
    condition = condition_2norm(triangular)

    normal_forms = {reduced_monos[j]: coeffs[j, :] for j in range(rank)}
    basis_pos = {m: j for j, m in enumerate(basis)}
    mult = []
    for var in range(n):
        mat = np.zeros((n_basis, n_basis))
        for jb, mono in enumerate(basis):
            shifted = mono[:var] + (mono[var] + 1,) + mono[var + 1 :]
            hit = basis_pos.get(shifted)
            if hit is not None:
                mat[hit, jb] = 1.0
            else:
                mat[:, jb] = normal_forms[shifted]
        mult.append(mat)

    # the result is shared freely across threads; freeze the array payloads
    reduced = np.hstack([triangular, rhs])
    for arr in (coeffs, diag, reduced, *mult):
        arr.flags.writeable = False

    return QuotientSystem(
        basis=basis,
        normal_forms=MappingProxyType(normal_forms),
        mult_matrices=tuple(mult),
        inverted_block_condition=condition,
        basis_condition_diag=(float(diag.min()), float(diag.max())),
        t=mac.t,
        support_size=n_cols,
        rank=rank,
        bezout=n_basis,
        pivot_diagonal=diag,
        dropped_row_max=dropped_max,
        strategy=strategy_name,
        reduced_matrix=reduced,
        reduced_monomials=reduced_monos,
    )


def matrix_commutator_metric(a: np.ndarray, b: np.ndarray) -> float:
    """||AB - BA||_2 / ||AB||_2, +inf when AB vanishes."""
    ab = a @ b
    num = float(np.linalg.norm(ab - b @ a, 2))
    den = float(np.linalg.norm(ab, 2))
    if den == 0.0:
        return float("inf")
    return num / den


def commutator_metric(qs: QuotientSystem, i: int, j: int) -> float:
    """Relative commutator of the multiplication matrices for x_i and x_j
    (1-based, i < j); near zero for a consistent quotient structure."""
    n = qs.nvars
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}")
    return matrix_commutator_metric(qs.mult_matrices[i - 1], qs.mult_matrices[j - 1])
