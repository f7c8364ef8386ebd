"""Per-sample anomaly scoring across dyadic window scales.

Three detector modes share the same per-scale machinery (lag window,
optional change of basis, one streaming tracker per scale):

* ``fixed``: one tracker over a single window of size ``fixed_p``.
* ``multiscale``: one tracker per window size 2, 4, ..., 2**J; each scale
  sees its own full lag window every step.
* ``hierarchical``: only the base scale sees the raw 2-window; each higher
  level consumes the 2-vector of the previous level's current and delayed
  projections, so per-step cost grows with the number of levels rather than
  the largest window. Scores at higher levels are relative to the previous
  level's representation, not back-propagated to the raw signal.

Every step emits one non-negative reconstruction error per scale. All modes
are strictly causal and deterministic: a score at time t depends only on
samples 0..t.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericError
from .haar import HaarBasis, haar_basis, is_power_of_two
from .lag import SampleBuffer
from .past import PastTracker, past_update_ops

MAX_SCALES = 20  # memory guard: largest window is 2**MAX_SCALES

MODES = ("fixed", "multiscale", "hierarchical")
BASES = ("identity", "haar")


@dataclass(frozen=True)
class DetectorConfig:
    """Validated detector settings.

    ``scales`` is the number of dyadic scales J (windows 2, 4, ..., 2**J)
    for the multiscale and hierarchical modes; ``fixed_p`` is the single
    window size for fixed mode. ``haar_between_levels`` optionally rotates
    the 2-vectors fed to hierarchical levels above the base.
    """

    mode: str = "multiscale"
    basis: str = "identity"
    scales: int = 4
    fixed_p: int = 4
    components: int = 1
    epsilon: float = 1e-4
    haar_between_levels: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.basis not in BASES:
            raise ConfigError(f"basis must be one of {BASES}, got {self.basis!r}")
        if not 1 <= self.scales <= MAX_SCALES:
            raise ConfigError(
                f"scales must be in 1..{MAX_SCALES}, got {self.scales}"
            )
        if self.fixed_p < 1:
            raise ConfigError(f"fixed_p must be >= 1, got {self.fixed_p}")
        if self.components not in (1, 2):
            raise ConfigError(f"components must be 1 or 2, got {self.components}")
        if not (0.0 < self.epsilon < 1.0):
            raise ConfigError(
                f"epsilon must satisfy 0 < epsilon < 1, got {self.epsilon}"
            )
        if self.mode == "fixed":
            if self.basis == "haar" and not is_power_of_two(self.fixed_p):
                raise ConfigError(
                    "basis=haar requires fixed_p to be a power of two, "
                    f"got fixed_p={self.fixed_p}"
                )
            if self.components > self.fixed_p:
                raise ConfigError(
                    f"components={self.components} exceeds window size "
                    f"fixed_p={self.fixed_p}"
                )

    @property
    def n_scales(self) -> int:
        """Number of score entries emitted per step."""
        return 1 if self.mode == "fixed" else self.scales

    @property
    def max_window(self) -> int:
        return self.fixed_p if self.mode == "fixed" else 2 ** self.scales


@dataclass(frozen=True)
class ScoreVector:
    """Per-scale reconstruction errors for one time step."""

    t: int
    alphas: np.ndarray


class _Channel:
    """One tracker at one representation: optional basis, then update."""

    __slots__ = ("basis", "tracker", "dim")

    def __init__(self, dim: int, basis: HaarBasis | None, k: int, epsilon: float):
        self.dim = dim
        self.basis = basis
        self.tracker = PastTracker(dim, k=k, epsilon=epsilon)

    def consume(self, vec: np.ndarray):
        z = self.basis.analyze(vec) if self.basis is not None else vec
        return self.tracker.update(z)

    @property
    def ops_per_step(self) -> int:
        basis_ops = self.dim * self.dim if self.basis is not None else 0
        return basis_ops + past_update_ops(self.dim, self.tracker.n_directions)


class Detector:
    """Common surface: step, run, op counting, state size."""

    def __init__(self, config: DetectorConfig) -> None:
        self.config = config
        self._ops = 0
        self._t = -1

    def step(self, x: float) -> ScoreVector:
        raise NotImplementedError

    def run(self, values: np.ndarray) -> np.ndarray:
        """Score a whole array; returns the (T, n_scales) score matrix."""
        values = np.asarray(values, dtype=float)
        out = np.empty((len(values), self.config.n_scales))
        for i, x in enumerate(values):
            out[i] = self.step(x).alphas
        return out

    @property
    def op_count(self) -> int:
        """Cumulative multiply-adds attributed to tracker updates and basis
        applications (see ``past_update_ops``)."""
        return self._ops

    @property
    def state_size(self) -> int:
        """Retained mutable floats; independent of how many samples were seen."""
        raise NotImplementedError


class WindowedDetector(Detector):
    """Fixed and multiscale modes: every scale sees its full lag window."""

    def __init__(self, config: DetectorConfig) -> None:
        super().__init__(config)
        if config.mode == "fixed":
            windows = [config.fixed_p]
        else:
            windows = [2 ** j for j in range(1, config.scales + 1)]
        self._windows = windows
        self._buffer = SampleBuffer(max(windows))
        self._channels = []
        for p in windows:
            basis = haar_basis(p) if config.basis == "haar" else None
            self._channels.append(_Channel(p, basis, config.components, config.epsilon))

    def step(self, x: float) -> ScoreVector:
        self._buffer.ingest(x)
        self._t += 1
        alphas = np.empty(len(self._channels))
        for j, (p, channel) in enumerate(zip(self._windows, self._channels)):
            vec = self._buffer.lag_vector(p)
            try:
                out = channel.consume(vec)
            except NumericError as exc:
                raise NumericError(f"{exc} (t={self._t}, scale index {j + 1})") from exc
            self._ops += channel.ops_per_step
            alphas[j] = out.score
        return ScoreVector(t=self._t, alphas=alphas)

    @property
    def state_size(self) -> int:
        return self._buffer.state_size + sum(
            ch.tracker.state_size for ch in self._channels
        )


class HierarchicalDetector(Detector):
    """Hierarchical mode: levels above the base consume projection pairs.

    Level 1 tracks the raw (or basis-rotated) 2-window. Level j+1 consumes
    ``[pi_t, pi_{t - 2**j}]`` of level j's first-direction projections; the
    delayed entry comes from a per-level ring of the last ``2**j + 1``
    projections. Before that ring fills, the earliest projection stands in
    for the delayed one, mirroring the lag-window padding rule.
    """

    def __init__(self, config: DetectorConfig) -> None:
        super().__init__(config)
        self._buffer = SampleBuffer(2)
        base_basis = haar_basis(2) if config.basis == "haar" else None
        level_basis = haar_basis(2) if config.haar_between_levels else None
        self._channels = [_Channel(2, base_basis, config.components, config.epsilon)]
        for _ in range(config.scales - 1):
            self._channels.append(
                _Channel(2, level_basis, config.components, config.epsilon)
            )
        # Projection ring for level j (1-based) feeds level j+1; the top
        # level has no consumer and keeps none.
        self._delays = [
            deque(maxlen=2 ** j + 1) for j in range(1, config.scales)
        ]

    def step(self, x: float) -> ScoreVector:
        self._buffer.ingest(x)
        self._t += 1
        alphas = np.empty(len(self._channels))
        vec = self._buffer.lag_vector(2)
        for j, channel in enumerate(self._channels):
            if j > 0:
                ring = self._delays[j - 1]
                vec = np.array([ring[-1], ring[0]])
            try:
                out = channel.consume(vec)
            except NumericError as exc:
                raise NumericError(f"{exc} (t={self._t}, scale index {j + 1})") from exc
            self._ops += channel.ops_per_step
            alphas[j] = out.score
            if j < len(self._delays):
                self._delays[j].append(out.projections[0])
        return ScoreVector(t=self._t, alphas=alphas)

    @property
    def state_size(self) -> int:
        return (
            self._buffer.state_size
            + sum(ch.tracker.state_size for ch in self._channels)
            + sum(ring.maxlen for ring in self._delays)
        )


def build_detector(config: DetectorConfig) -> Detector:
    if config.mode == "hierarchical":
        return HierarchicalDetector(config)
    return WindowedDetector(config)
