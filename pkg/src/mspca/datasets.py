"""Series loading and seeded synthetic benchmark generation.

Two on-disk formats are supported: simple labeled CSV (columns ``value`` and
``is_anomaly``/``anomaly``, optional ``timestamp``) and the split form where
a ``timestamp,value`` CSV is labeled by an external list of anomalous
timestamps (optionally parsed from a combined-labels JSON file keyed by
relative path). Synthetic series are pure functions of their spec.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError, DataError

SOURCES = ("yahoo", "nab", "synthetic")
BASE_KINDS = ("sinusoid", "sinusoid_mix", "trend_plus_oscillation")
ANOMALY_KINDS = ("spike", "drop", "level_shift")


@dataclass(frozen=True)
class SeriesRecord:
    """One univariate series with pointwise binary anomaly labels."""

    id: str
    values: np.ndarray
    labels: np.ndarray
    source: str

    def __post_init__(self) -> None:
        if len(self.values) != len(self.labels):
            raise DataError(
                f"series {self.id!r}: {len(self.values)} values vs "
                f"{len(self.labels)} labels"
            )
        if self.source not in SOURCES:
            raise DataError(f"unknown source {self.source!r}")
        if not np.all(np.isfinite(self.values)):
            raise DataError(f"series {self.id!r} contains non-finite values")


@dataclass(frozen=True)
class SynthSpec:
    """Deterministic recipe for one synthetic series.

    ``anomaly_magnitude`` is in units of the clean (pre-injection) series'
    standard deviation. ``margin`` is the earliest index an anomaly may be
    placed at; keep it at least twice the largest detector window so scores
    have settled before the first anomaly.
    """

    seed: int = 0
    length: int = 512
    base: str = "sinusoid"
    periods: tuple[float, ...] = (64.0,)
    amplitude: float = 1.0
    noise_sigma: float = 0.1
    n_anomalies: int = 0
    anomaly_kind: str = "spike"
    anomaly_magnitude: float = 8.0
    margin: int = 128
    min_separation: int = 1
    trend_slope: float = 0.002

    def __post_init__(self) -> None:
        if self.length < 64:
            raise ConfigError(f"length must be >= 64, got {self.length}")
        if self.base not in BASE_KINDS:
            raise ConfigError(f"base must be one of {BASE_KINDS}, got {self.base!r}")
        if self.anomaly_kind not in ANOMALY_KINDS:
            raise ConfigError(
                f"anomaly_kind must be one of {ANOMALY_KINDS}, got {self.anomaly_kind!r}"
            )
        if not self.periods or any(p <= 0 for p in self.periods):
            raise ConfigError(f"periods must be positive, got {self.periods}")
        if self.noise_sigma < 0:
            raise ConfigError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.n_anomalies < 0:
            raise ConfigError(f"n_anomalies must be >= 0, got {self.n_anomalies}")
        if self.min_separation < 1:
            raise ConfigError(
                f"min_separation must be >= 1, got {self.min_separation}"
            )
        if self.n_anomalies > 0:
            if self.anomaly_magnitude == 0:
                raise ConfigError(
                    "anomaly_magnitude 0 would inject unlabeled-equivalent points"
                )
            if not 0 <= self.margin < self.length:
                raise ConfigError(
                    f"margin must be in [0, length), got {self.margin}"
                )
            if self.n_anomalies * self.min_separation > self.length - self.margin:
                raise ConfigError(
                    f"{self.n_anomalies} anomalies at separation "
                    f"{self.min_separation} do not fit after margin "
                    f"{self.margin} in length {self.length}"
                )


def _draw_positions(
    rng: np.random.Generator, lo: int, hi: int, n: int, separation: int
) -> np.ndarray:
    """Draw ``n`` distinct positions in [lo, hi), pairwise >= separation apart.

    Greedy pass over a seeded shuffle keeps the draw deterministic; compound
    anomalies (closer than ``separation``) are never produced.
    """
    candidates = rng.permutation(np.arange(lo, hi))
    chosen: list[int] = []
    for pos in candidates:
        if all(abs(pos - prev) >= separation for prev in chosen):
            chosen.append(int(pos))
            if len(chosen) == n:
                return np.sort(np.asarray(chosen))
    raise ConfigError(
        f"could not place {n} anomalies at separation {separation} in [{lo}, {hi})"
    )


def generate_synthetic(spec: SynthSpec) -> SeriesRecord:
    """Generate one seeded series with ground-truth labels."""
    rng = np.random.default_rng(spec.seed)
    t = np.arange(spec.length, dtype=float)
    x = np.zeros(spec.length)
    if spec.base == "sinusoid":
        phase = rng.uniform(0.0, 2.0 * math.pi)
        x += spec.amplitude * np.sin(2.0 * math.pi * t / spec.periods[0] + phase)
    elif spec.base == "sinusoid_mix":
        for period in spec.periods:
            phase = rng.uniform(0.0, 2.0 * math.pi)
            x += spec.amplitude * np.sin(2.0 * math.pi * t / period + phase)
    else:  # trend_plus_oscillation
        phase = rng.uniform(0.0, 2.0 * math.pi)
        x += spec.trend_slope * t
        x += spec.amplitude * np.sin(2.0 * math.pi * t / spec.periods[0] + phase)
    if spec.noise_sigma > 0:
        x += rng.normal(0.0, spec.noise_sigma, spec.length)

    labels = np.zeros(spec.length, dtype=int)
    if spec.n_anomalies > 0:
        scale = float(x.std())
        if scale == 0.0:
            raise ConfigError("cannot size anomalies: clean series has zero std")
        step = spec.anomaly_magnitude * scale
        positions = _draw_positions(
            rng, spec.margin, spec.length, spec.n_anomalies, spec.min_separation
        )
        for pos in positions:
            if spec.anomaly_kind == "spike":
                x[pos] += step
            elif spec.anomaly_kind == "drop":
                x[pos] -= step
            else:  # level_shift
                x[pos:] += step
            labels[pos] = 1

    return SeriesRecord(
        id=f"synth-{spec.base}-{spec.anomaly_kind}-{spec.seed}",
        values=x,
        labels=labels,
        source="synthetic",
    )


_SPEC_FIELD_TYPES = {
    "seed": int,
    "length": int,
    "base": str,
    "amplitude": float,
    "noise_sigma": float,
    "n_anomalies": int,
    "anomaly_kind": str,
    "anomaly_magnitude": float,
    "margin": int,
    "min_separation": int,
    "trend_slope": float,
}


def load_synth_spec(path) -> SynthSpec:
    """Parse a spec file: JSON object or flat ``key=value`` lines."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: invalid JSON spec: {exc}") from exc
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DataError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()
    kwargs = {}
    for key, value in raw.items():
        if key == "periods" or key == "period":
            if isinstance(value, str):
                value = [v for v in value.split(",") if v.strip()]
            elif not isinstance(value, (list, tuple)):
                value = [value]
            try:
                kwargs["periods"] = tuple(float(v) for v in value)
            except (TypeError, ValueError) as exc:
                raise DataError(f"{path}: bad periods value {value!r}") from exc
        elif key in _SPEC_FIELD_TYPES:
            try:
                kwargs[key] = _SPEC_FIELD_TYPES[key](value)
            except (TypeError, ValueError) as exc:
                raise DataError(f"{path}: bad value for {key}: {value!r}") from exc
        else:
            raise DataError(f"{path}: unknown spec field {key!r}")
    return SynthSpec(**kwargs)


_LABEL_ALIASES = ("is_anomaly", "anomaly")


def load_yahoo_csv(path, *, allow_missing_labels: bool = False) -> SeriesRecord:
    """Load a labeled CSV (``value`` plus ``is_anomaly``/``anomaly`` columns).

    With ``allow_missing_labels`` the label column may be absent and labels
    default to all zeros (useful for scoring unlabeled streams).
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = [h.strip() for h in reader.fieldnames or []]
        if "value" not in header:
            raise DataError(f"{path}: missing required column 'value'")
        label_col = next((c for c in _LABEL_ALIASES if c in header), None)
        if label_col is None and not allow_missing_labels:
            raise DataError(
                f"{path}: missing label column (one of {_LABEL_ALIASES})"
            )
        values: list[float] = []
        labels: list[int] = []
        for row_num, row in enumerate(reader, start=2):
            row = {(k or "").strip(): v for k, v in row.items()}
            try:
                values.append(float(row["value"]))
            except (TypeError, ValueError) as exc:
                raise DataError(
                    f"{path}: row {row_num}: non-numeric value {row.get('value')!r}"
                ) from exc
            if label_col is None:
                labels.append(0)
                continue
            raw_label = (row.get(label_col) or "").strip()
            try:
                flag = int(float(raw_label))
            except ValueError as exc:
                raise DataError(
                    f"{path}: row {row_num}: non-numeric label {raw_label!r}"
                ) from exc
            if flag not in (0, 1):
                raise DataError(f"{path}: row {row_num}: label must be 0/1, got {flag}")
            labels.append(flag)
    if not values:
        raise DataError(f"{path}: no data rows")
    return SeriesRecord(
        id=path.stem,
        values=np.asarray(values, dtype=float),
        labels=np.asarray(labels, dtype=int),
        source="yahoo",
    )


def save_yahoo_csv(record: SeriesRecord, path) -> None:
    """Write a record in the labeled-CSV format; floats round-trip exactly."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value", "is_anomaly"])
        for value, label in zip(record.values, record.labels):
            writer.writerow([repr(float(value)), int(label)])


def load_nab_labels(path) -> dict[str, list[str]]:
    """Parse a combined-labels JSON file: {relative_path: [timestamps]}."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid labels JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DataError(f"{path}: labels JSON must be an object")
    return {str(k): [str(ts) for ts in v] for k, v in raw.items()}


def load_nab_csv(data_path, label_timestamps) -> SeriesRecord:
    """Load a ``timestamp,value`` CSV; label rows whose timestamp is listed.

    Matching is exact string equality after trimming. Listed timestamps that
    appear nowhere in the series are dropped with a warning.
    """
    path = Path(data_path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = [h.strip() for h in reader.fieldnames or []]
        for col in ("timestamp", "value"):
            if col not in header:
                raise DataError(f"{path}: missing required column {col!r}")
        timestamps: list[str] = []
        values: list[float] = []
        for row_num, row in enumerate(reader, start=2):
            row = {(k or "").strip(): v for k, v in row.items()}
            timestamps.append((row.get("timestamp") or "").strip())
            try:
                values.append(float(row["value"]))
            except (TypeError, ValueError) as exc:
                raise DataError(
                    f"{path}: row {row_num}: non-numeric value {row.get('value')!r}"
                ) from exc
    if not values:
        raise DataError(f"{path}: no data rows")
    wanted = {ts.strip() for ts in label_timestamps}
    labels = np.array([1 if ts in wanted else 0 for ts in timestamps], dtype=int)
    n_dropped = len(wanted - set(timestamps))
    if n_dropped:
        warnings.warn(
            f"{path}: {n_dropped} label timestamp(s) not present in the series; dropped",
            stacklevel=2,
        )
    return SeriesRecord(
        id=path.stem,
        values=np.asarray(values, dtype=float),
        labels=labels,
        source="nab",
    )


def load_series_dir(
    directory, nab_labels: dict[str, list[str]] | None = None
) -> tuple[list[SeriesRecord], int]:
    """Load every CSV under a directory, sorted by filename.

    Malformed files are skipped with a warning; returns the records and the
    number of files skipped that way.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise DataError(f"not a directory: {directory}")
    paths = sorted(directory.rglob("*.csv"))
    if not paths:
        raise DataError(f"no CSV files under {directory}")
    records: list[SeriesRecord] = []
    n_failed = 0
    for path in paths:
        try:
            if nab_labels is not None:
                rel = path.relative_to(directory).as_posix()
                records.append(load_nab_csv(path, nab_labels.get(rel, [])))
            else:
                records.append(load_yahoo_csv(path))
        except DataError as exc:
            n_failed += 1
            warnings.warn(f"skipping malformed series file: {exc}", stacklevel=2)
    if not records:
        raise DataError(f"no loadable series under {directory}")
    return records, n_failed


def spec_variant(spec: SynthSpec, **overrides) -> SynthSpec:
    """Convenience: a copy of ``spec`` with fields replaced."""
    return replace(spec, **overrides)
