"""Tests for JSON, JSON-lines and CSV output."""

import io
import json
from fractions import Fraction

from core.brackets import parse_chain
from core.results import CheckReport, Verdict
from file_io import dumps_json, format_float, tabulate, to_jsonable, write_csv, write_jsonl


class TestToJsonable:
    def test_float_rounding(self):
        assert format_float(0.1 + 0.2) == 0.3
        assert format_float(float("inf")) == "inf"

    def test_fractions_and_complex(self):
        assert to_jsonable(Fraction(3, 4)) == "3/4"
        assert to_jsonable(Fraction(4, 2)) == 2
        assert to_jsonable(complex(0.5, 2.0)) == [0.5, 2.0]

    def test_enum_and_to_dict(self):
        report = CheckReport.from_failures("key-lemma", [])
        data = to_jsonable([report, Verdict.CONSISTENT])
        assert data[0]["verdict"] == "passed"
        assert data[1] == "consistent with sampled evidence"

    def test_sorted_keys_are_stable(self):
        first = dumps_json({"b": 1, "a": [1.0, 2.5]})
        second = dumps_json({"a": [1.0, 2.5], "b": 1})
        assert first == second
        assert json.loads(first) == {"a": [1.0, 2.5], "b": 1}


class TestJsonl:
    def test_one_object_per_line(self):
        stream = io.StringIO()
        reports = [CheckReport.from_failures(name, []) for name in ("x", "y")]
        assert write_jsonl(reports, stream) == 2
        lines = stream.getvalue().splitlines()
        assert [json.loads(line)["claim"] for line in lines] == ["x", "y"]


class TestCsv:
    def test_chain_rows(self):
        fieldnames, rows = tabulate(parse_chain("a b - 1/2*a B"))
        assert fieldnames == ["kind", "class", "coeff"]
        assert [row["class"] for row in rows] == ["a b", "a B"]

    def test_nested_cells_are_json(self):
        stream = io.StringIO()
        write_csv([{"claim": "x", "failures": ["one", "two"]}], stream)
        header, row = stream.getvalue().splitlines()
        assert header == "claim,failures"
        assert row.startswith("x,")
        assert '""one""' in row

    def test_report_list(self):
        reports = [CheckReport.from_failures("x", ["bad input"])]
        fieldnames, rows = tabulate(reports)
        assert "verdict" in fieldnames
        assert rows[0]["verdict"] == "failed"

    def test_empty_rows(self):
        stream = io.StringIO()
        assert write_csv([], stream) == 0
