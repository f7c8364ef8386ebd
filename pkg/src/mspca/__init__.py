"""Streaming multiscale anomaly detection for univariate time series."""

from .aggregation import (
    MinCorrAggregator,
    NormAggregator,
    Pca2Aggregator,
    make_aggregator,
    mincorr_offline,
    norm_score,
)
from .datasets import (
    SeriesRecord,
    SynthSpec,
    generate_synthetic,
    load_nab_csv,
    load_nab_labels,
    load_synth_spec,
    load_yahoo_csv,
    save_yahoo_csv,
)
from .detector import (
    DetectorConfig,
    HierarchicalDetector,
    ScoreVector,
    WindowedDetector,
    build_detector,
)
from .errors import (
    ConfigError,
    DataError,
    MspcaError,
    NumericError,
    UndefinedAUCError,
)
from .evaluation import (
    BenchmarkReport,
    auc,
    brute_force_auc,
    dilate_labels,
    summarize,
)
from .haar import HaarBasis, haar_basis
from .lag import SampleBuffer
from .past import PastOutput, PastTracker, batch_principal_direction, past_update_ops
from .pipeline import RunConfig, ScoreResult, evaluate_records, grid_reports, score_values

__version__ = "0.1.0"

__all__ = [
    "BenchmarkReport",
    "ConfigError",
    "DataError",
    "DetectorConfig",
    "HaarBasis",
    "HierarchicalDetector",
    "MinCorrAggregator",
    "MspcaError",
    "NormAggregator",
    "NumericError",
    "PastOutput",
    "PastTracker",
    "Pca2Aggregator",
    "RunConfig",
    "SampleBuffer",
    "ScoreResult",
    "ScoreVector",
    "SeriesRecord",
    "SynthSpec",
    "UndefinedAUCError",
    "WindowedDetector",
    "auc",
    "batch_principal_direction",
    "brute_force_auc",
    "build_detector",
    "dilate_labels",
    "evaluate_records",
    "generate_synthetic",
    "grid_reports",
    "haar_basis",
    "load_nab_csv",
    "load_nab_labels",
    "load_synth_spec",
    "load_yahoo_csv",
    "make_aggregator",
    "mincorr_offline",
    "norm_score",
    "past_update_ops",
    "save_yahoo_csv",
    "score_values",
    "summarize",
]
