"""Collapse a per-scale score vector into one scalar per time step.

Three rules:

* ``norm``: squared Euclidean norm of the score vector.
* ``pca2``: a second streaming tracker is run on the score vectors
  themselves; the emitted value is that tracker's reconstruction error, so
  it highlights score patterns orthogonal to the dominant cross-scale one.
* ``mincorr``: keep the score of the scale least correlated with the others,
  judged by row sums of the running (uncentered) Gram matrix of score
  vectors. The offline variant fixes one scale from the whole series.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .past import PastTracker

RULES = ("norm", "pca2", "mincorr")
MINCORR_MODES = ("streaming", "offline")


def norm_score(alpha: np.ndarray) -> float:
    """Sum of squared per-scale scores."""
    alpha = np.asarray(alpha, dtype=float)
    return float(alpha @ alpha)


class NormAggregator:
    state_size = 0

    def update(self, alpha: np.ndarray) -> float:
        return norm_score(alpha)


class Pca2Aggregator:
    """Reconstruction error of a one-direction tracker over score vectors."""

    def __init__(self, n_scales: int, epsilon: float = 1e-4) -> None:
        self._tracker = PastTracker(n_scales, k=1, epsilon=epsilon)

    def update(self, alpha: np.ndarray) -> float:
        return self._tracker.update(alpha).score

    @property
    def state_size(self) -> int:
        return self._tracker.state_size


class MinCorrAggregator:
    """Streaming least-correlated-scale selection.

    Keeps ``G += alpha alpha^T`` and emits the entry of the scale with the
    smallest Gram row sum (ties resolve to the smallest scale index). The
    emitted value is always an exact entry of the input vector.
    """

    def __init__(self, n_scales: int) -> None:
        if n_scales < 1:
            raise ConfigError(f"n_scales must be >= 1, got {n_scales}")
        self._gram = np.zeros((n_scales, n_scales))
        self._n = 0

    def update(self, alpha: np.ndarray) -> float:
        alpha = np.asarray(alpha, dtype=float)
        self._gram += np.outer(alpha, alpha)
        self._n += 1
        return float(alpha[self.selected_scale])

    @property
    def selected_scale(self) -> int:
        """Zero-based index of the currently least-correlated scale."""
        return int(np.argmin(self._gram.sum(axis=1)))

    @property
    def gram(self) -> np.ndarray:
        return self._gram.copy()

    @property
    def state_size(self) -> int:
        return self._gram.size + 1


def mincorr_offline(alphas: np.ndarray) -> tuple[np.ndarray, int]:
    """Two-pass variant: pick one scale from the full score matrix.

    Returns the selected column and its zero-based index. The selection
    equals what the streaming variant would hold after the final step.
    """
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim != 2 or alphas.shape[0] < 1:
        raise ConfigError(f"expected a nonempty (T, J) score matrix, got {alphas.shape}")
    gram = alphas.T @ alphas
    j_star = int(np.argmin(gram.sum(axis=1)))
    return alphas[:, j_star].copy(), j_star


def make_aggregator(rule: str, n_scales: int, epsilon: float = 1e-4):
    """Streaming aggregator factory; offline mincorr is handled separately."""
    if rule == "norm":
        return NormAggregator()
    if rule == "pca2":
        return Pca2Aggregator(n_scales, epsilon=epsilon)
    if rule == "mincorr":
        return MinCorrAggregator(n_scales)
    raise ConfigError(f"aggregation rule must be one of {RULES}, got {rule!r}")
