import re

import numpy as np

_COMPLEX = re.compile(
    r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?P<sign>[+-])(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\*i$"
)


def parse_complex(text):
    """Parse the solver's 're+im*i' output format."""
    m = _COMPLEX.match(text.strip())
    assert m, f"not a complex literal: {text!r}"
    imag = float(m.group("im"))
    if m.group("sign") == "-":
        imag = -imag
    return complex(float(m.group("re")), imag)


def assert_multisets_close(a, b, tol):
    """Greedy nearest-neighbor matching of two complex multisets.

    Plain lexicographic sorting is unstable when conjugate pairs share a
    real part up to rounding, so each element of `a` is matched to the
    closest unused element of `b` instead. Rows are treated as points when
    the inputs are 2-D.
    """
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    b = np.atleast_2d(np.asarray(b, dtype=complex))
    if a.shape[0] == 1 and a.shape[1] > 1 and b.shape == a.shape:
        a = a.T
        b = b.T
    assert a.shape == b.shape, f"shapes differ: {a.shape} vs {b.shape}"
    remaining = list(range(b.shape[0]))
    for row in a:
        dists = [np.max(np.abs(row - b[j])) for j in remaining]
        pick = int(np.argmin(dists))
        assert dists[pick] <= tol, f"unmatched element (best distance {dists[pick]:.3e})"
        remaining.pop(pick)
