from __future__ import annotations

import json
from pathlib import Path

import pytest

from viewfuse.core.errors import InvalidInputError
from viewfuse.data.report import (
    EvaluationReport,
    SplitRecord,
    SweepReport,
    read_report,
    write_report,
)


def _report() -> EvaluationReport:
    record = SplitRecord(
        split="0,1->2",
        train_views=[0, 1],
        test_view=2,
        modality="fused",
        accuracy=1.0,
        correct=6,
        total=6,
        confusion=[[2, 0, 0], [0, 2, 0], [0, 0, 2]],
    )
    return EvaluationReport(
        protocol="cross-view",
        records=[record],
        mean_accuracy={"fused": 1.0},
        confusion_matrices={"fused": record.confusion},
        params={"lambda": 0.01, "lambda1": 0.35},
    )


def test_round_trip(tmp_path: Path):
    report = _report()
    write_report(report, tmp_path / "report.json")
    assert read_report(tmp_path / "report.json") == report


def test_identical_reports_are_byte_identical(tmp_path: Path):
    write_report(_report(), tmp_path / "a.json")
    write_report(_report(), tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_serialized_values(tmp_path: Path):
    write_report(_report(), tmp_path / "report.json")
    text = (tmp_path / "report.json").read_text()
    assert '"accuracy": 1.0' in text
    record = json.loads(text)["records"][0]
    assert record["confusion"] == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    assert all(isinstance(v, int) for row in record["confusion"] for v in row)
    assert list(json.loads(text)) == [
        "protocol",
        "records",
        "mean_accuracy",
        "fusion_gain",
        "error_reduction",
        "confusion_matrices",
        "params",
    ]


def test_validate():
    report = _report()
    report.validate()
    report.records[0].accuracy = 1.5
    with pytest.raises(InvalidInputError):
        report.validate()
    report.records[0].accuracy = 1.0
    report.records[0].total = 7
    with pytest.raises(InvalidInputError, match="does not sum"):
        report.validate()


def test_malformed_report(tmp_path: Path):
    (tmp_path / "report.json").write_text('{"protocol": "cross-view"}')
    with pytest.raises(InvalidInputError, match="Malformed"):
        read_report(tmp_path / "report.json")


@pytest.mark.parametrize("content", [b'{"protocol": ', b'{"protocol": "\xc3\xa9"}'])
def test_unreadable_report(tmp_path: Path, content: bytes):
    (tmp_path / "report.json").write_bytes(content)
    with pytest.raises(InvalidInputError, match="Malformed"):
        read_report(tmp_path / "report.json")


class TestSweepReport:
    def test_best_value_prefers_smaller_weight_on_ties(self):
        sweep = SweepReport("cross-view", [0.0, 0.35, 0.5, 1.0], [0.6, 0.9, 0.9, 0.7])
        assert sweep.best_value == 0.35

    def test_round_trip(self, tmp_path: Path):
        sweep = SweepReport("cross-view", [0.0, 1.0], [0.5, 0.75], params={"k": 5})
        write_report(sweep, tmp_path / "sweep.json")
        data = json.loads((tmp_path / "sweep.json").read_text())
        assert data["best_lambda1"] == 1.0
        assert SweepReport.from_dict(data) == sweep
