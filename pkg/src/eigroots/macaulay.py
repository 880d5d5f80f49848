"""Dense Macaulay matrix construction.

Rows are the coefficient vectors of the shifted generators x^beta * f_i;
columns are labeled by all monomials of degree <= t with the degree-t
block leading, where t = sum(d_i) - (n - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, TextIO

import numpy as np

from .polynomials import (
    ComplexPoint,
    Monomial,
    PolySystem,
    display_key,
    monomial_degree,
    monomial_mul,
    monomial_str,
    monomials_up_to_degree,
)


def macaulay_degree(degrees: Sequence[int]) -> int:
    """Construction degree t = sum(d_i) - (n - 1)."""
    degrees = tuple(degrees)
    if not degrees:
        raise ValueError("empty degree sequence")
    if any(d < 1 for d in degrees):
        raise ValueError("every degree must be >= 1")
    return sum(degrees) - (len(degrees) - 1)


def bezout_number(degrees: Sequence[int]) -> int:
    """Generic root count: the product of the degrees."""
    degrees = tuple(degrees)
    if not degrees:
        raise ValueError("empty degree sequence")
    if any(d < 1 for d in degrees):
        raise ValueError("every degree must be >= 1")
    return reduce(lambda a, b: a * b, degrees, 1)


def enumerate_monomials(nvars: int, max_degree: int) -> list[Monomial]:
    """All monomials of degree <= max_degree in canonical graded order;
    length C(max_degree + nvars, nvars)."""
    return monomials_up_to_degree(nvars, max_degree)


@dataclass(frozen=True)
class MacaulayMatrix:
    """Dense Macaulay matrix with its labeling data.

    `col_monomials` lists the support in degree-descending order, so the
    first `split` columns have degree exactly `t` (the block called M_b)
    and the rest degree < t (M_*). `row_shifts[i]` lists the shift
    monomials of generator i in graded order.
    """

    matrix: np.ndarray
    col_monomials: tuple[Monomial, ...]
    row_shifts: tuple[tuple[Monomial, ...], ...]
    t: int
    split: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def column_index(self) -> dict[Monomial, int]:
        return {m: j for j, m in enumerate(self.col_monomials)}

    def row_labels(self) -> list[str]:
        labels = []
        for i, shifts in enumerate(self.row_shifts):
            for beta in shifts:
                if monomial_degree(beta) == 0:
                    labels.append(f"f{i + 1}")
                else:
                    labels.append(f"{monomial_str(beta)}*f{i + 1}")
        return labels

    def write_csv(self, stream: TextIO) -> None:
        """Debug dump: header of monomial labels, one labeled row per shift."""
        stream.write("row," + ",".join(monomial_str(m) for m in self.col_monomials) + "\n")
        for label, row in zip(self.row_labels(), self.matrix):
            stream.write(label + "," + ",".join(repr(v) for v in row) + "\n")


def build_macaulay(system: PolySystem) -> MacaulayMatrix:
    """Assemble the dense Macaulay matrix of degree t = sum(d_i) - (n - 1)."""
    n = system.nvars
    degrees = system.degrees
    t = macaulay_degree(degrees)
    cols = sorted(monomials_up_to_degree(n, t), key=display_key)
    split = sum(1 for m in cols if monomial_degree(m) == t)
    col_index = {m: j for j, m in enumerate(cols)}

    shifts_per_block = tuple(
        tuple(monomials_up_to_degree(n, t - d)) for d in degrees
    )
    nrows = sum(len(s) for s in shifts_per_block)
    matrix = np.zeros((nrows, len(cols)))
    row = 0
    for poly, shifts in zip(system.polys, shifts_per_block):
        items = list(poly.terms.items())
        for beta in shifts:
            for alpha, coeff in items:
                matrix[row, col_index[monomial_mul(beta, alpha)]] = coeff
            row += 1
    return MacaulayMatrix(
        matrix=matrix,
        col_monomials=tuple(cols),
        row_shifts=shifts_per_block,
        t=t,
        split=split,
    )


def root_vector(point: ComplexPoint, col_monomials: Sequence[Monomial]) -> np.ndarray:
    """Vandermonde-style vector v(z) = (z^alpha_1, ..., z^alpha_l) in column
    order; M v(z) = 0 exactly when z is a common root."""
    z = np.asarray(point, dtype=complex)
    monos = list(col_monomials)
    if monos and len(monos[0]) != z.shape[0]:
        raise ValueError(f"point has {z.shape[0]} coordinates, monomials have {len(monos[0])}")
    exps = np.array(monos, dtype=np.int64).reshape(len(monos), z.shape[0])
    out = np.ones(len(monos), dtype=complex)
    for i in range(z.shape[0]):
        col = exps[:, i]
        max_e = int(col.max()) if col.size else 0
        if max_e == 0:
            continue
        powers = np.empty(max_e + 1, dtype=complex)
        powers[0] = 1.0
        for e in range(1, max_e + 1):
            powers[e] = powers[e - 1] * z[i]
        out *= powers[col]
    return out


def support_size(nvars: int, max_degree: int) -> int:
    """C(max_degree + nvars, nvars) without enumerating."""
    return math.comb(max_degree + nvars, nvars)
