"""Feature selection for connection-record intrusion detection.

A whale-optimization/genetic-algorithm hybrid searches binary feature masks,
each mask scored by a KNN classifier on a fixed holdout via a two-objective
fitness (feature ratio + classification error). The heavy lifting lives in
the compiled extension; this package just re-exports it.
"""

from gwofs._core import (
    BaselineRow,
    BaselineToggles,
    BinarizeMode,
    ClassLabel,
    ConfusionMatrix,
    ConnectionRecord,
    ConvergenceEntry,
    ConvergenceLog,
    EncodedDataset,
    EvalProtocol,
    ExperimentConfig,
    ExperimentResult,
    FeatureMask,
    FeatureSchema,
    FitnessValue,
    KnnModel,
    MetricsReport,
    OptimizerConfig,
    Position,
    RunResult,
    SearchAgent,
    accuracy,
    apply_mask,
    binarize,
    confusion,
    encode,
    error_rate,
    evaluate,
    f_measure,
    generate_kdd_like,
    generate_synthetic,
    metrics_json,
    optimize,
    parse_kdd,
    parse_kdd_file,
    precision,
    report,
    run_experiment,
    sensitivity,
    stratified_split,
    subsample,
    to_kdd_line,
    to_records,
    write_kdd_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
