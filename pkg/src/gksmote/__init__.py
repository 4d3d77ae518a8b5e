"""KDE-guided, noise-filtering SMOTE oversampling for imbalanced binary data."""

__version__ = "0.1.0"

from .data import (  # noqa: E402
    Dataset,
    Label,
    LabeledPoint,
    NoiseSpec,
    Origin,
    SplitSpec,
    imbalance_ratio,
    inject_label_noise,
    load_csv,
    stratified_split,
    write_csv,
)
from .density import BandwidthPolicy, kde_density, select_bandwidth  # noqa: E402
from .sampler import SamplerConfig, gk_smote  # noqa: E402
from .smote import smote  # noqa: E402

__all__ = [
    "BandwidthPolicy",
    "Dataset",
    "Label",
    "LabeledPoint",
    "NoiseSpec",
    "Origin",
    "SamplerConfig",
    "SplitSpec",
    "gk_smote",
    "imbalance_ratio",
    "inject_label_noise",
    "kde_density",
    "load_csv",
    "select_bandwidth",
    "smote",
    "stratified_split",
    "write_csv",
]
