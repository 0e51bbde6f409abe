"""Feature extraction: temporal pyramid, trajectory codebook, view-transfer network, fusion."""

from __future__ import annotations

from .codebook import (
    Codebook,
    assign,
    bow_encode,
    kmeans_fit,
    load_codebook,
    nearest_centroid,
    save_codebook,
)
from .fusion import (
    FusedDictionary,
    Modality,
    ModalityFeatureSet,
    class_matrix,
    fuse,
    fuse_blocks,
    fuse_single,
    rescale_columns,
    zscore_columns,
)
from .pyramid import (
    PyramidDescriptor,
    encode_depth,
    ftp_encode,
    pyramid_groups,
    vectorize_descriptor,
)
from .viewnet import (
    NETWORK_VARIANTS,
    NetworkParams,
    TrainingPair,
    extract_feature,
    extract_features,
    forward,
    init_params,
    load_params,
    loss_and_gradients,
    lr_at,
    make_training_pairs,
    save_params,
    sgd_train,
)

__all__ = [
    "NETWORK_VARIANTS",
    "Codebook",
    "FusedDictionary",
    "Modality",
    "ModalityFeatureSet",
    "NetworkParams",
    "PyramidDescriptor",
    "TrainingPair",
    "assign",
    "bow_encode",
    "class_matrix",
    "encode_depth",
    "extract_feature",
    "extract_features",
    "forward",
    "ftp_encode",
    "fuse",
    "fuse_blocks",
    "fuse_single",
    "init_params",
    "kmeans_fit",
    "load_codebook",
    "load_params",
    "loss_and_gradients",
    "lr_at",
    "make_training_pairs",
    "nearest_centroid",
    "pyramid_groups",
    "rescale_columns",
    "save_codebook",
    "save_params",
    "sgd_train",
    "vectorize_descriptor",
    "zscore_columns",
]
