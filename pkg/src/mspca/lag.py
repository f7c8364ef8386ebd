"""Ring buffer over the raw stream and lag-window extraction.

A lag window of size ``p`` is the vector of the ``p`` most recent samples,
newest first. Before ``p`` samples have arrived, the missing tail positions
repeat the oldest sample seen so far, so early windows are well defined and
constant over the not-yet-observed region.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError, DataError


class SampleBuffer:
    """Fixed-capacity ring buffer of the most recent raw samples.

    Capacity is pinned at construction to the largest window any consumer
    will request; it never grows mid-stream, so per-series memory stays
    bounded regardless of stream length.
    """

    __slots__ = ("_data", "_capacity", "_count")

    def __init__(self, capacity: int) -> None:
        if capacity < 1:
            raise ConfigError(f"buffer capacity must be >= 1, got {capacity}")
        self._data = np.zeros(int(capacity))
        self._capacity = int(capacity)
        self._count = 0

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def count_seen(self) -> int:
        """Total number of samples ingested since construction."""
        return self._count

    @property
    def state_size(self) -> int:
        """Number of retained floats (stream-length independent)."""
        return self._capacity

    def ingest(self, x: float) -> None:
        """Advance the stream by one sample, evicting the oldest if full."""
        x = float(x)
        if not math.isfinite(x):
            raise DataError(f"non-finite sample at stream index {self._count}: {x!r}")
        self._data[self._count % self._capacity] = x
        self._count += 1

    def lag_vector(self, p: int) -> np.ndarray:
        """Return the ``p`` most recent samples, newest first.

        Positions older than the first ingested sample are filled by
        repeating the oldest available sample.
        """
        if p < 1:
            raise ConfigError(f"window size must be >= 1, got {p}")
        if p > self._capacity:
            raise ConfigError(
                f"window size {p} exceeds buffer capacity {self._capacity}"
            )
        if self._count == 0:
            raise DataError("lag_vector requested from an empty buffer")
        held = min(self._count, self._capacity)
        avail = min(p, held)
        idx = (self._count - 1 - np.arange(avail)) % self._capacity
        out = np.empty(p)
        out[:avail] = self._data[idx]
        if avail < p:
            out[avail:] = out[avail - 1]
        return out
