"""Exception types raised across the package."""


class EigrootsError(Exception):
    """Base class for solver-specific failures."""


class ParseError(EigrootsError):
    """Invalid polynomial or system text. Carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidBasisError(EigrootsError):
    """A requested fixed quotient-ring basis is malformed for the system."""


class GenericityError(EigrootsError):
    """The triangular block to invert has a numerically vanishing pivot.

    This is evidence that the input system violates the genericity
    assumptions (fewer than Bezout-many affine solutions, or solutions at
    infinity).
    """

    def __init__(self, pivot_index: int, ratio: float):
        super().__init__(
            f"genericity violation: pivot {pivot_index} of the inverted block "
            f"has magnitude {ratio:.3e} relative to the leading pivot"
        )
        self.pivot_index = pivot_index
        self.ratio = ratio


class SingularBlockError(EigrootsError):
    """Back-substitution hit a zero (or below-tolerance) diagonal entry."""


class ExtractionError(EigrootsError):
    """Eigenvector matrices stayed ill-conditioned across all retries.

    Typically a symptom of multiple roots, which are out of scope.
    """
