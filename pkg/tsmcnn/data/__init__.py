from tsmcnn.data.ucr import (
    LabeledSeries,
    Dataset,
    load_ucr,
    save_ucr,
    dataset_name,
)
from tsmcnn.data.preprocessing import (
    Z_NORMALISED_DATASETS,
    ZNormalisation,
    z_normalize,
    z_normalize_dataset,
    should_z_normalize,
    preprocess,
    stratified_split,
    augment_by_slicing,
)

__all__ = [
    "LabeledSeries",
    "Dataset",
    "load_ucr",
    "save_ucr",
    "dataset_name",
    "Z_NORMALISED_DATASETS",
    "ZNormalisation",
    "z_normalize",
    "z_normalize_dataset",
    "should_z_normalize",
    "preprocess",
    "stratified_split",
    "augment_by_slicing",
]
