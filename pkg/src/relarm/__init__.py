"""relarm: a rating pipeline built from direction-aware normalization,
l1-scaled principal components, ranking-function features, k-means
clustering, and projection-ordered category assignment."""

from .attributes import (
    RankedFeatureMatrix,
    RelativeAttribute,
    attribute_vector,
    map_to_feature_space,
    rank_value,
)
from .clustering import ClusteringResult, Xorshift64Star, kmeans
from .config import PipelineConfig, config_from_dict, load_config
from .dataset import (
    Direction,
    IndicatorSpec,
    RawDataset,
    load_dataset,
    save_dataset,
)
from .errors import NumericalError, RelarmError, ValidationError
from .normalize import (
    ConstantColumnWarning,
    NormalizedMatrix,
    normalize_column,
    normalize_dataset,
)
from .pca import FixtureReport, PcaModel, fit_pca, jacobi_eigh, verify_fixture_w
from .pipeline import PipelineOutputs, build_snapshot, run_pipeline
from .rating import (
    AgreementReport,
    RatingResult,
    RatingScale,
    assign_ratings,
    collapse_category,
    project_center,
    score_agreement,
)
from .snapshot import Snapshot, load_snapshot, save_snapshot, score_with_snapshot

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "ClusteringResult",
    "ConstantColumnWarning",
    "Direction",
    "FixtureReport",
    "IndicatorSpec",
    "NormalizedMatrix",
    "NumericalError",
    "PcaModel",
    "PipelineConfig",
    "PipelineOutputs",
    "RankedFeatureMatrix",
    "RatingResult",
    "RatingScale",
    "RawDataset",
    "RelarmError",
    "RelativeAttribute",
    "Snapshot",
    "ValidationError",
    "Xorshift64Star",
    "assign_ratings",
    "attribute_vector",
    "build_snapshot",
    "collapse_category",
    "config_from_dict",
    "fit_pca",
    "jacobi_eigh",
    "kmeans",
    "load_config",
    "load_dataset",
    "load_snapshot",
    "map_to_feature_space",
    "normalize_column",
    "normalize_dataset",
    "project_center",
    "rank_value",
    "run_pipeline",
    "save_dataset",
    "save_snapshot",
    "score_agreement",
    "score_with_snapshot",
    "verify_fixture_w",
]
