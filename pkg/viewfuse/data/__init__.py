"""File formats: matrices, labels, manifests and reports."""

from __future__ import annotations

from .manifest import (
    DatasetManifest,
    SampleRecord,
    TransferRecord,
    load_manifest,
    manifest_from_dict,
    write_manifest,
)
from .matrix import (
    format_matrix,
    parse_matrix,
    read_labels,
    read_matrix,
    read_matrix_blocks,
    write_labels,
    write_matrix,
    write_matrix_blocks,
)
from .report import (
    EvaluationReport,
    SplitRecord,
    SweepReport,
    format_report,
    read_report,
    write_report,
)

__all__ = [
    "DatasetManifest",
    "EvaluationReport",
    "SampleRecord",
    "SplitRecord",
    "SweepReport",
    "TransferRecord",
    "format_matrix",
    "format_report",
    "load_manifest",
    "manifest_from_dict",
    "parse_matrix",
    "read_labels",
    "read_matrix",
    "read_matrix_blocks",
    "read_report",
    "write_labels",
    "write_manifest",
    "write_matrix",
    "write_matrix_blocks",
    "write_report",
]
