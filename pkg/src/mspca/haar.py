"""Orthonormal multiresolution basis built by a doubling recursion.

Starting from the 1x1 identity, each doubling step stacks a smoothed copy of
the previous basis on top of a block of pairwise-difference rows:

    B_2N = (1/sqrt(2)) * [ B_N (x) [1, 1] ]
                         [ I_N (x) [1, -1] ]

where ``(x)`` is the Kronecker product. Row 0 is always the constant vector
``1/sqrt(N) * [1, ..., 1]``; the remaining rows are difference functionals
ordered coarse to fine. The result is orthonormal, so applying it preserves
Euclidean norms exactly (up to rounding).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class HaarBasis:
    """Immutable orthonormal basis matrix of a power-of-two size."""

    size: int
    matrix: np.ndarray

    def analyze(self, x: np.ndarray) -> np.ndarray:
        """Change of basis: returns ``matrix.T @ x``.

        Orthonormality makes this norm-preserving and exactly invertible
        by :meth:`synthesize`.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.size,):
            raise ValueError(
                f"expected vector of length {self.size}, got shape {x.shape}"
            )
        return self.matrix.T @ x

    def synthesize(self, coeffs: np.ndarray) -> np.ndarray:
        """Invert :meth:`analyze`: returns ``matrix @ coeffs``."""
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.size,):
            raise ValueError(
                f"expected vector of length {self.size}, got shape {coeffs.shape}"
            )
        return self.matrix @ coeffs


def haar_basis(n: int) -> HaarBasis:
    """Build the orthonormal basis of size ``n`` (must be a power of two)."""
    if not is_power_of_two(n):
        raise ConfigError(f"basis size must be a power of two >= 1, got {n}")
    h = np.array([[1.0]])
    size = 1
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    while size < n:
        top = np.kron(h, [1.0, 1.0])
        bottom = np.kron(np.eye(size), [1.0, -1.0])
        h = inv_sqrt2 * np.vstack([top, bottom])
        size *= 2
    h.setflags(write=False)
    return HaarBasis(size=n, matrix=h)
