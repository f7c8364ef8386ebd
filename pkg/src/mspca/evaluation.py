"""Threshold-free detector evaluation: ROC/AUC and benchmark summaries.

AUC is the probability that a randomly chosen anomalous point outscores a
randomly chosen normal one, with ties counted one half. That rank statistic
equals trapezoidal integration of the ROC curve, which ``brute_force_auc``
computes directly as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import ConfigError, UndefinedAUCError


def _check_labeled(scores, labels) -> tuple[np.ndarray, np.ndarray]:
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError(
            f"scores and labels must be equal-length vectors, got "
            f"{scores.shape} and {labels.shape}"
        )
    n_pos = int(labels.sum())
    if n_pos == 0 or n_pos == len(labels):
        raise UndefinedAUCError(
            f"AUC undefined: labels contain {n_pos} positives out of {len(labels)}"
        )
    return scores, labels


def auc(scores, labels) -> float:
    """Rank-statistic AUC with ties counted 1/2."""
    scores, labels = _check_labeled(scores, labels)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    ranks = rankdata(scores)
    u = float(ranks[labels == 1].sum()) - n_pos * (n_pos + 1) / 2.0
    return u / (n_pos * n_neg)


def brute_force_auc(scores, labels) -> float:
    """Explicit threshold sweep + trapezoidal ROC integration (test oracle)."""
    scores, labels = _check_labeled(scores, labels)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    points = [(0.0, 0.0)]
    for threshold in sorted(set(scores.tolist()), reverse=True):
        predicted = scores >= threshold
        tpr = float(np.sum(predicted & (labels == 1))) / n_pos
        fpr = float(np.sum(predicted & (labels == 0))) / n_neg
        points.append((fpr, tpr))
    area = 0.0
    for (fpr0, tpr0), (fpr1, tpr1) in zip(points, points[1:]):
        area += (fpr1 - fpr0) * (tpr1 + tpr0) / 2.0
    return area


def dilate_labels(labels, radius: int) -> np.ndarray:
    """Mark every point within ``radius`` of a positive as positive.

    Radius 0 is the identity; use only for sensitivity studies, the default
    evaluation is pointwise.
    """
    labels = np.asarray(labels, dtype=int)
    if radius < 0:
        raise ConfigError(f"dilation radius must be >= 0, got {radius}")
    if radius == 0:
        return labels.copy()
    out = np.zeros_like(labels)
    for idx in np.flatnonzero(labels):
        lo = max(0, idx - radius)
        out[lo : idx + radius + 1] = 1
    return out


@dataclass(frozen=True)
class BenchmarkReport:
    """Summary statistics over the defined (non-skipped) per-series AUCs."""

    aucs: tuple[float, ...]
    mean: float
    std: float
    median: float
    mad: float
    n_series: int
    n_skipped: int


def summarize(aucs, n_skipped: int = 0) -> BenchmarkReport:
    """Mean, population std, median, and unscaled median absolute deviation."""
    values = np.asarray(list(aucs), dtype=float)
    if values.size == 0:
        raise ConfigError("cannot summarize an empty AUC list")
    median = float(np.median(values))
    return BenchmarkReport(
        aucs=tuple(float(v) for v in values),
        mean=float(values.mean()),
        std=float(values.std()),
        median=median,
        mad=float(np.median(np.abs(values - median))),
        n_series=int(values.size),
        n_skipped=int(n_skipped),
    )
