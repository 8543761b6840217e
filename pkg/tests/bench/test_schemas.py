# tests/bench/test_schemas.py
import json

import pytest
from pydantic import ValidationError

from lyndon_bwt.bench.schemas import BenchReport, StackReport, working_space


def test_report_json_line():
    """Reports serialise to one JSON object carrying the schema version."""
    report = BenchReport(dataset="banana", algo="bwt", n=7, sigma=4, seconds={"sa": 0.5, "lambda": 0.25},
                         total_seconds=0.75, peak_bytes=63, working_bytes=working_space(63, 7),
                         stack=StackReport(pushes=6, pops=2, high_water=4, bytes=56))
    line = report.to_json()
    assert "\n" not in line
    data = json.loads(line)
    assert data["schema"] == "bench-v1"
    assert data["peak_bytes_per_symbol"] == 9.0
    assert data["working_bytes"] == 63 - 5 * 7
    assert data["stack"]["high_water"] == 4
    assert data["error"] is None


def test_working_space_width_64():
    assert working_space(1000, 10, width=64) == 1000 - 10 - 80


def test_report_validation():
    with pytest.raises(ValidationError):
        BenchReport(dataset="x", algo="bwt", n=0, sigma=1)


def test_report_accepts_field_name_for_schema():
    report = BenchReport(schema_version="bench-v1", dataset="x", algo="nsv", n=1, sigma=1)
    assert report.schema_version == "bench-v1"
