"""Root extraction from the multiplication matrices.

All N = prod(d_i) solutions come out of one eigendecomposition: a random
real combination m_f = sum_i c_i m_{x_i} is diagonalized, and coordinate k
of solution j is the (j, j) entry of V^-1 m_{x_k} V. The combination is
redrawn when the eigenvector matrix is ill-conditioned, which for generic
input happens with probability zero; persistent failure suggests multiple
roots (out of scope).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from .exceptions import ExtractionError
from .macaulay import bezout_number
from .normalform import BasisStrategy, QR_PIVOT, QuotientSystem, compute_quotient_system
from .polynomials import ComplexPoint, Polynomial, PolySystem, residuals

#: eigenvector-matrix condition above which the random combination is redrawn
EXTRACTION_CONDITION_LIMIT = 1e8

#: redraw attempts after the first draw
EXTRACTION_RETRIES = 3


@dataclass(frozen=True)
class SolutionSet:
    """All extracted points with their residuals and extraction diagnostics."""

    points: tuple[ComplexPoint, ...]
    residuals: tuple[float, ...]
    max_residual: float
    extraction_condition: float
    retries: int

    def __len__(self) -> int:
        return len(self.points)

    def points_array(self) -> np.ndarray:
        return np.array(self.points, dtype=complex).reshape(len(self.points), -1)

    def to_dict(self) -> dict:
        """Structured mirror of the text output format."""
        return {
            "points": [
                {"coordinates": [[z.real, z.imag] for z in pt], "residual": res}
                for pt, res in zip(self.points, self.residuals)
            ],
            "max_residual": self.max_residual,
            "extraction_condition": self.extraction_condition,
            "retries": self.retries,
        }


def _format_complex(z: complex) -> str:
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}*i"


def format_solution_lines(solutions: SolutionSet) -> list[str]:
    """One line per point: comma-separated re+im*i components, then the
    residual as a trailing column."""
    lines = []
    for pt, res in zip(solutions.points, solutions.residuals):
        lines.append(", ".join(_format_complex(z) for z in pt) + f", {res!r}")
    return lines


def extract_solutions(system: PolySystem, qs: QuotientSystem, seed: int = 0) -> SolutionSet:
    """Simultaneously diagonalize the multiplication matrices of `qs` and
    read the solution coordinates off the diagonal."""
    n = system.nvars
    rng = np.random.default_rng(seed)
    vectors = None
    condition = float("inf")
    retries = 0
    for attempt in range(1 + EXTRACTION_RETRIES):
        combo = rng.standard_normal(n)
        m_random = sum(c * m for c, m in zip(combo, qs.mult_matrices))
        _, candidate = np.linalg.eig(m_random)
        svals = np.linalg.svd(candidate, compute_uv=False)
        cond = float("inf") if svals[-1] == 0.0 else float(svals[0] / svals[-1])
        if cond <= EXTRACTION_CONDITION_LIMIT:
            vectors = candidate
            condition = cond
            retries = attempt
            break
        condition = min(condition, cond)
    if vectors is None:
        raise ExtractionError(
            f"eigenvector matrix condition stayed above {EXTRACTION_CONDITION_LIMIT:.1e} "
            f"after {1 + EXTRACTION_RETRIES} draws (best {condition:.3e}); "
            "the system may have multiple roots"
        )
    coords = np.empty((qs.bezout, n), dtype=complex)
    for k, mult in enumerate(qs.mult_matrices):
        diagonalized = np.linalg.solve(vectors, mult.astype(complex) @ vectors)
        coords[:, k] = np.diagonal(diagonalized)
    res = residuals(system, coords)
    return SolutionSet(
        points=tuple(tuple(complex(v) for v in row) for row in coords),
        residuals=tuple(float(v) for v in res),
        max_residual=float(res.max()) if res.size else 0.0,
        extraction_condition=condition,
        retries=retries,
    )


def solve_system(system: PolySystem, strategy: BasisStrategy = QR_PIVOT, seed: int = 0) -> SolutionSet:
    """End-to-end solve: quotient structure, then eigenvalue extraction."""
    qs = compute_quotient_system(system, strategy)
    return extract_solutions(system, qs, seed)


def evaluate_on_variety(f: Polynomial, qs: QuotientSystem) -> np.ndarray:
    """The multiset {f(z) : z in V(I)} as the eigenvalues of
    f(m_{x_1}, ..., m_{x_n}), sorted by (real, imag)."""
    if f.nvars != qs.nvars:
        raise ValueError(f"polynomial has {f.nvars} variables, system has {qs.nvars}")
    size = qs.bezout
    max_exp = [0] * qs.nvars
    for mono in f.terms:
        for var, exp in enumerate(mono):
            max_exp[var] = max(max_exp[var], exp)
    powers = []
    for var, mult in enumerate(qs.mult_matrices):
        table = [np.eye(size)]
        for _ in range(max_exp[var]):
            table.append(table[-1] @ mult)
        powers.append(table)

    acc = np.zeros((size, size))
    for mono, coeff in f.terms.items():
        term = coeff * np.eye(size)
        for var, exp in enumerate(mono):
            if exp:
                term = term @ powers[var][exp]
        acc += term
    values = np.linalg.eigvals(acc).astype(complex)
    return np.array(sorted(values, key=lambda z: (z.real, z.imag)), dtype=complex)


@dataclass(frozen=True)
class VerificationReport:
    n_points: int
    n_passing: int
    tol: float
    complete: bool
    worst_index: int | None
    worst_residual: float | None

    def summary(self) -> str:
        worst = "none" if self.worst_index is None else (
            f"point {self.worst_index} with residual {self.worst_residual!r}"
        )
        status = "complete" if self.complete else "INCOMPLETE"
        return (
            f"{self.n_passing}/{self.n_points} points pass tol {self.tol!r} "
            f"({status}); worst: {worst}"
        )


def verify_solutions(system: PolySystem, solutions: SolutionSet, tol: float = 1e-8) -> VerificationReport:
    """Recompute residuals independently of the extraction path and report
    how many points meet `tol`, plus Bezout completeness."""
    expected = bezout_number(system.degrees)
    if len(solutions) == 0:
        return VerificationReport(0, 0, tol, complete=False, worst_index=None, worst_residual=None)
    res = residuals(system, solutions.points_array())
    worst = int(np.argmax(res))
    return VerificationReport(
        n_points=len(solutions),
        n_passing=int(np.count_nonzero(res <= tol)),
        tol=tol,
        complete=len(solutions) == expected,
        worst_index=worst,
        worst_residual=float(res[worst]),
    )
