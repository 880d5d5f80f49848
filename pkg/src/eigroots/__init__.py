"""Numerical solver for square dense systems of polynomial equations.

Builds a Macaulay matrix, picks a well-conditioned monomial basis for the
quotient ring by QR with column pivoting, assembles the multiplication
matrices, and reads all Bezout-many roots off an eigendecomposition.
"""

from .exceptions import (
    EigrootsError,
    ExtractionError,
    GenericityError,
    InvalidBasisError,
    ParseError,
    SingularBlockError,
)
from .kernels import BACKEND_NAME as kernel_backend
from .macaulay import (
    MacaulayMatrix,
    bezout_number,
    build_macaulay,
    enumerate_monomials,
    macaulay_degree,
    root_vector,
)
from .normalform import (
    FixedBasis,
    QR_PIVOT,
    QRPivot,
    QuotientSystem,
    block_basis,
    commutator_metric,
    compute_quotient_system,
)
from .parsing import parse_polynomial, read_system_file, write_system_file
from .polynomials import (
    Monomial,
    NewtonResult,
    Polynomial,
    PolySystem,
    format_polynomial,
    newton_refine,
    random_dense_system,
    residual,
)
from .rootfind import (
    SolutionSet,
    VerificationReport,
    evaluate_on_variety,
    extract_solutions,
    solve_system,
    verify_solutions,
)

__version__ = "0.1.0"

__all__ = [
    "EigrootsError",
    "ExtractionError",
    "FixedBasis",
    "GenericityError",
    "InvalidBasisError",
    "MacaulayMatrix",
    "Monomial",
    "NewtonResult",
    "ParseError",
    "Polynomial",
    "PolySystem",
    "QR_PIVOT",
    "QRPivot",
    "QuotientSystem",
    "SingularBlockError",
    "SolutionSet",
    "VerificationReport",
    "bezout_number",
    "block_basis",
    "build_macaulay",
    "commutator_metric",
    "compute_quotient_system",
    "enumerate_monomials",
    "evaluate_on_variety",
    "extract_solutions",
    "format_polynomial",
    "kernel_backend",
    "macaulay_degree",
    "newton_refine",
    "parse_polynomial",
    "random_dense_system",
    "read_system_file",
    "residual",
    "root_vector",
    "solve_system",
    "verify_solutions",
    "write_system_file",
]
