"""Multivariate polynomials with real coefficients in variables x1..xn.

A monomial is a tuple of non-negative integer exponents, one per variable;
a polynomial is a finite map from monomials to nonzero float coefficients.
Coefficients are real throughout, but evaluation accepts complex points
since the varieties we solve for live in C^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

Monomial = tuple[int, ...]
ComplexPoint = tuple[complex, ...]


def monomial_degree(mono: Monomial) -> int:
    """Total degree |alpha| of an exponent tuple."""
    return sum(mono)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_str(mono: Monomial) -> str:
    """Render an exponent tuple, e.g. (2, 1) -> "x1^2*x2", (0, 0) -> "1"."""
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def grading_key(mono: Monomial):
    """Sort key for the canonical graded order: total degree first, then
    lexicographic with the x1 exponent dominant (x1^2 before x1*x2)."""
    return (sum(mono), tuple(-e for e in mono))


def display_key(mono: Monomial):
    """Sort key for degree-descending order; same within-degree tie-break."""
    return (-sum(mono), tuple(-e for e in mono))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_up_to_degree(nvars: int, max_degree: int) -> list[Monomial]:
    """All exponent tuples with |alpha| <= max_degree in canonical graded
    order. Length C(max_degree + nvars, nvars)."""
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out: list[Monomial] = []
    for d in range(max_degree + 1):
        out.extend(_compositions(d, nvars))
    return out


def _power_table(values: np.ndarray, max_exp: int) -> np.ndarray:
    """values (k,) -> table (k, max_exp+1) of integer powers, with v^0 = 1."""
    table = np.ones((values.shape[0], max_exp + 1), dtype=values.dtype)
    for e in range(1, max_exp + 1):
        table[:, e] = table[:, e - 1] * values
    return table


def _eval_terms(exps: np.ndarray, coeffs: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Evaluate sum_t coeffs[t] * prod_i points[:, i]**exps[t, i] at each row
    of `points`. Powers come from repeated multiplication so that 0**0 == 1
    holds for complex zeros as well."""
    k = points.shape[0]
    if exps.shape[0] == 0:
        return np.zeros(k, dtype=points.dtype)
    vals = np.ones((k, exps.shape[0]), dtype=points.dtype)
    for i in range(points.shape[1]):
        col = exps[:, i]
        max_e = int(col.max())
        if max_e == 0:
            continue
        vals *= _power_table(points[:, i], max_e)[:, col]
    return vals @ coeffs.astype(points.dtype)


class Polynomial:
    """Immutable sparse polynomial over x1..xn with real coefficients."""

    __slots__ = ("_nvars", "_terms", "_packed")

    def __init__(self, nvars: int, terms: Mapping[Monomial, float]):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        clean: dict[Monomial, float] = {}
        for mono, coeff in terms.items():
            key = tuple(int(e) for e in mono)
            if len(key) != nvars:
                raise ValueError(f"monomial {key} has {len(key)} exponents, expected {nvars}")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in monomial {key}")
            c = float(coeff)
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient {c!r} for monomial {key}")
            if c != 0.0:
                clean[key] = c
        self._nvars = nvars
        self._terms = clean
        self._packed: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: float) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """The polynomial x_index, with 1-based index."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[index - 1] = 1
        return cls(nvars, {tuple(exps): 1.0})

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Monomial, float]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Max total degree over the support; undefined for the zero polynomial."""
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(monomial_degree(m) for m in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, float]]:
        """Terms in degree-descending canonical order (printing order)."""
        return [(m, self._terms[m]) for m in sorted(self._terms, key=display_key)]

    def _pack(self) -> tuple[np.ndarray, np.ndarray]:
        if self._packed is None:
            monos = sorted(self._terms, key=display_key)
            exps = np.array(monos, dtype=np.int64).reshape(len(monos), self._nvars)
            coeffs = np.array([self._terms[m] for m in monos], dtype=np.float64)
            self._packed = (exps, coeffs)
        return self._packed

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Evaluate at a point of C^n."""
        return complex(self.evaluate_many(np.asarray(point, dtype=complex)[None, :])[0])

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at each row of a (k, nvars) array. dtype follows `points`."""
        points = np.asarray(points)
        if points.ndim != 2 or points.shape[1] != self._nvars:
            raise ValueError(f"expected points of shape (k, {self._nvars})")
        exps, coeffs = self._pack()
        if not np.issubdtype(points.dtype, np.complexfloating):
            points = points.astype(np.float64)
        return _eval_terms(exps, coeffs, points)

    def differentiate(self, var: int) -> "Polynomial":
        """Formal partial derivative with respect to x_var (1-based)."""
        if not 1 <= var <= self._nvars:
            raise ValueError(f"variable index {var} out of range 1..{self._nvars}")
        i = var - 1
        out: dict[Monomial, float] = {}
        for mono, c in self._terms.items():
            if mono[i] > 0:
                lowered = mono[:i] + (mono[i] - 1,) + mono[i + 1 :]
                out[lowered] = out.get(lowered, 0.0) + c * mono[i]
        return Polynomial(self._nvars, out)

    def abs_coefficients(self) -> "Polynomial":
        """Same support with every coefficient replaced by its magnitude."""
        return Polynomial(self._nvars, {m: abs(c) for m, c in self._terms.items()})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other._nvars != self._nvars:
            raise ValueError("nvars mismatch")
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, 0.0) + c
        return Polynomial(self._nvars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-1.0) * other

    def __mul__(self, scalar: float) -> "Polynomial":
        if isinstance(scalar, Polynomial):
            return NotImplemented
        return Polynomial(self._nvars, {m: c * scalar for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return (-1.0) * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Polynomial({self._nvars}, {self!s})"

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(poly: Polynomial) -> str:
    """Canonical text form, re-parseable by `parsing.parse_polynomial`.

    Floats are written with repr(), which round-trips exactly.
    """
    if poly.is_zero:
        return "0"
    pieces: list[str] = []
    for mono, coeff in poly.sorted_terms():
        mag = abs(coeff)
        if monomial_degree(mono) == 0:
            body = repr(mag)
        elif mag == 1.0:
            body = monomial_str(mono)
        else:
            body = f"{repr(mag)}*{monomial_str(mono)}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(pieces)


@dataclass(frozen=True)
class PolySystem:
    """A square system: n polynomials in n variables, none of them zero."""

    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if not polys:
            raise ValueError("empty system")
        nvars = polys[0].nvars
        if any(p.nvars != nvars for p in polys):
            raise ValueError("all polynomials must share the same nvars")
        if len(polys) != nvars:
            raise ValueError(f"system is not square: {len(polys)} polynomials in {nvars} variables")
        if any(p.is_zero for p in polys):
            raise ValueError("zero polynomial in system")

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    def evaluate(self, point: Sequence[complex]) -> np.ndarray:
        """Vector (f1(z), ..., fn(z)) as a complex array."""
        pt = np.asarray(point, dtype=complex)[None, :]
        return np.array([p.evaluate_many(pt)[0] for p in self.polys])


def random_dense_system(nvars: int, degrees: Sequence[int], seed: int) -> PolySystem:
    """Dense random system: every monomial of degree <= d_i gets an
    independent N(0,1) coefficient. Deterministic for a fixed seed."""
    degrees = tuple(int(d) for d in degrees)
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    if len(degrees) != nvars:
        raise ValueError(f"expected {nvars} degrees, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        raise ValueError("every degree must be >= 1")
    rng = np.random.default_rng(seed)
    polys = []
    for d in degrees:
        monos = monomials_up_to_degree(nvars, d)
        coeffs = rng.standard_normal(len(monos))
        polys.append(Polynomial(nvars, dict(zip(monos, coeffs))))
    return PolySystem(tuple(polys))


def residuals(system: PolySystem, points: np.ndarray) -> np.ndarray:
    """Backward-style residual of each row of `points` (shape (k, n)).

    Per equation: r_i = |f_i(z)| / (f_i,abs(|z|) + 1) where f_i,abs has the
    coefficient magnitudes and |z| is the componentwise complex modulus;
    the residual is the mean of the r_i.
    """
    points = np.asarray(points, dtype=complex)
    if points.ndim != 2 or points.shape[1] != system.nvars:
        raise ValueError(f"expected points of shape (k, {system.nvars})")
    abs_points = np.abs(points)
    total = np.zeros(points.shape[0])
    for p in system.polys:
        num = np.abs(p.evaluate_many(points))
        den = p.abs_coefficients().evaluate_many(abs_points).real + 1.0
        total += num / den
    return total / len(system.polys)


def residual(system: PolySystem, point: Sequence[complex]) -> float:
    """Residual of a single point; zero exactly when every f_i vanishes."""
    return float(residuals(system, np.asarray(point, dtype=complex)[None, :])[0])


@dataclass(frozen=True)
class NewtonResult:
    point: ComplexPoint
    residual: float
    iterations: int
    singular_jacobian: bool


def newton_refine(system: PolySystem, point: Sequence[complex], max_iters: int = 1) -> NewtonResult:
    """Newton iteration on the square system, at most `max_iters` steps.

    Stops early once the residual no longer decreases and never returns a
    point with a larger residual than the input. A numerically singular
    Jacobian leaves the best point unchanged and sets the flag.
    """
    n = system.nvars
    z = np.asarray(point, dtype=complex)
    if z.shape != (n,):
        raise ValueError(f"expected a point of length {n}")
    derivs = [[p.differentiate(v) for v in range(1, n + 1)] for p in system.polys]
    best = z.copy()
    best_res = residual(system, z)
    iterations = 0
    singular = False
    current = z.copy()
    for _ in range(max_iters):
        fval = system.evaluate(current)
        jac = np.empty((n, n), dtype=complex)
        for i in range(n):
            for k in range(n):
                jac[i, k] = derivs[i][k].evaluate(current)
        if not np.all(np.isfinite(jac)) or np.linalg.cond(jac) > 1e14:
            singular = True
            break
        step = np.linalg.solve(jac, fval)
        candidate = current - step
        res = residual(system, candidate)
        iterations += 1
        if res < best_res:
            best = candidate
            best_res = res
            current = candidate
        else:
            break
        if best_res == 0.0:
            break
    return NewtonResult(tuple(complex(v) for v in best), best_res, iterations, singular)
