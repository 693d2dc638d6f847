"""stumpbench: simple-tree benchmarking and cost-curve comparison."""

from .dataset import (
    DataError,
    Dataset,
    FeatureSpec,
    FoldPlan,
    dataset_to_csv,
    fold_split,
    infer_schema,
    load_dataset,
    make_fold_plan,
    parse_dataset,
)
from .learners import (
    Depth2Model,
    MajorityModel,
    Model,
    SplitRule,
    StumpModel,
    discretize_numeric,
    predict,
    train,
    train_depth2,
    train_majority,
    train_one_r,
    training_error,
)
from .evaluation import (
    ConfusionCounts,
    CVResult,
    ReportTable,
    build_report,
    confusion,
    cross_validate,
)
from .costcurves import (
    ConfidenceBand,
    DominanceRegions,
    OperatingPoint,
    bootstrap_band,
    crossover,
    difference_regions,
    lower_envelope,
    ne_at,
    operating_point,
    pc_plus,
)
from .modelio import dump_model, load_model, read_model, save_model

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "Dataset",
    "FeatureSpec",
    "FoldPlan",
    "dataset_to_csv",
    "fold_split",
    "infer_schema",
    "load_dataset",
    "make_fold_plan",
    "parse_dataset",
    "Depth2Model",
    "MajorityModel",
    "Model",
    "SplitRule",
    "StumpModel",
    "discretize_numeric",
    "predict",
    "train",
    "train_depth2",
    "train_majority",
    "train_one_r",
    "training_error",
    "ConfusionCounts",
    "CVResult",
    "ReportTable",
    "build_report",
    "confusion",
    "cross_validate",
    "ConfidenceBand",
    "DominanceRegions",
    "OperatingPoint",
    "bootstrap_band",
    "crossover",
    "difference_regions",
    "lower_envelope",
    "ne_at",
    "operating_point",
    "pc_plus",
    "dump_model",
    "load_model",
    "read_model",
    "save_model",
    "__version__",
]
