"""Single-pass principal-direction tracking with per-sample updates.

Each tracked direction ``w`` (unit norm) carries a scalar energy accumulator
``s2``. For an incoming vector ``r`` (the raw input for the first direction,
the residual left by the first direction for the second) one update is:

    y   = w . r
    s2 += y^2
    e   = r - y * w
    w  <- normalize(w + (y / s2) * e)
    pi  = w . r        (projection, taken with the post-update direction)

The reconstruction is the sum of ``pi * w`` over directions and the anomaly
score is the squared distance between the input and its reconstruction.

A direction starts unset and is seeded from the first nonzero input it sees,
normalized; on that step the update above leaves it unchanged and the score
is exactly zero. Energy starts at a small ``epsilon`` and never decreases.
There is no forgetting: the gain ``y / s2`` decays as energy accumulates, so
the direction settles on the dominant axis of the whole stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError, NumericError


@dataclass(frozen=True)
class PastOutput:
    """Result of one tracker update."""

    projections: tuple[float, ...]
    reconstruction: np.ndarray
    score: float


def past_update_ops(dim: int, k: int) -> int:
    """Multiply-add count attributed to one tracker update.

    Per direction: projection (dim), energy (1), residual-from-direction
    (dim), direction step (dim + 1), renormalization (2*dim + 1), post-update
    projection (dim). Plus per direction dim for the reconstruction sum,
    dim for the second direction's deflated input, and dim for the score.
    """
    per_direction = 6 * dim + 3
    return k * per_direction + k * dim + (k - 1) * dim + dim


class PastTracker:
    """Streaming tracker of the first one or two principal directions.

    The second direction, when enabled, is trained by deflation: it sees the
    residual after the first direction's projection has been removed.

    Args:
        dim: Input dimensionality (>= 1).
        k: Number of tracked directions, 1 or 2 (k <= dim).
        epsilon: Initial energy, 0 < epsilon < 1.
    """

    __slots__ = ("_dim", "_k", "_epsilon", "_w", "_energy", "_ready")

    def __init__(self, dim: int, k: int = 1, epsilon: float = 1e-4) -> None:
        if dim < 1:
            raise ConfigError(f"dim must be >= 1, got {dim}")
        if k not in (1, 2):
            raise ConfigError(f"k must be 1 or 2, got {k}")
        if k > dim:
            raise ConfigError(f"k={k} exceeds input dimension {dim}")
        if not (0.0 < epsilon < 1.0):
            raise ConfigError(f"epsilon must satisfy 0 < epsilon < 1, got {epsilon}")
        self._dim = dim
        self._k = k
        self._epsilon = float(epsilon)
        self._w = np.zeros((k, dim))
        self._energy = np.full(k, float(epsilon))
        self._ready = [False] * k

    @classmethod
    def with_directions(
        cls,
        directions: np.ndarray,
        energies: np.ndarray | None = None,
        epsilon: float = 1e-4,
    ) -> "PastTracker":
        """Build a tracker warm-started with known unit directions."""
        w = np.atleast_2d(np.asarray(directions, dtype=float))
        k, dim = w.shape
        tracker = cls(dim, k, epsilon)
        for i in range(k):
            norm = math.sqrt(float(w[i] @ w[i]))
            if norm == 0.0:
                raise ConfigError("initial directions must be nonzero")
            tracker._w[i] = w[i] / norm
            tracker._ready[i] = True
        if energies is not None:
            energies = np.asarray(energies, dtype=float)
            if energies.shape != (k,) or np.any(energies < epsilon):
                raise ConfigError("energies must be one value >= epsilon per direction")
            tracker._energy[:] = energies
        return tracker

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def n_directions(self) -> int:
        return self._k

    @property
    def directions(self) -> np.ndarray:
        return self._w.copy()

    @property
    def energies(self) -> np.ndarray:
        return self._energy.copy()

    @property
    def state_size(self) -> int:
        """Retained floats: k directions of length dim plus k energies."""
        return self._k * self._dim + self._k

    def update(self, z: np.ndarray) -> PastOutput:
        z = np.asarray(z, dtype=float)
        if z.shape != (self._dim,):
            raise ValueError(f"expected vector of length {self._dim}, got {z.shape}")
        r = z
        recon = np.zeros(self._dim)
        projections: list[float] = []
        for i in range(self._k):
            if not self._ready[i]:
                norm_sq = float(r @ r)
                if norm_sq == 0.0:
                    # Nothing to seed from; this direction contributes nothing.
                    projections.append(0.0)
                    continue
                self._w[i] = r / math.sqrt(norm_sq)
                self._ready[i] = True
            w = self._w[i]
            y = float(w @ r)
            self._energy[i] += y * y
            e = r - y * w
            w = w + (y / self._energy[i]) * e
            w = w / math.sqrt(float(w @ w))
            self._w[i] = w
            pi = float(w @ r)
            projections.append(pi)
            recon += pi * w
            if i == 0 and self._k == 2:
                r = z - pi * w
        diff = recon - z
        score = float(diff @ diff)
        if not math.isfinite(score):
            raise NumericError("non-finite anomaly score in tracker update")
        return PastOutput(
            projections=tuple(projections), reconstruction=recon, score=score
        )


def batch_principal_direction(data: np.ndarray) -> np.ndarray:
    """First principal direction of a sample matrix by full eigendecomposition.

    Test oracle for the streaming tracker, not part of the streaming path.
    Uses the uncentered second-moment matrix, matching what the tracker
    minimizes; the sign is fixed so the largest-magnitude entry is positive.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2:
        raise ValueError(f"expected a 2-D sample matrix, got shape {data.shape}")
    n, dim = data.shape
    if dim < 1 or n < dim:
        raise ConfigError(f"need at least dim={dim} rows, got {n}")
    gram = data.T @ data
    if not np.any(gram):
        raise DataError("degenerate all-zero data has no principal direction")
    _, vectors = np.linalg.eigh(gram)
    w = vectors[:, -1]
    if w[np.argmax(np.abs(w))] < 0:
        w = -w
    return w
