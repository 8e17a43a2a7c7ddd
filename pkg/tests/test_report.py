from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from cooccur.report import (
    BenchRow,
    ScaleRow,
    emit_report,
    emit_scale_report,
    read_report,
)

SAMPLE = [
    BenchRow("pt", ("a", "c"), 2, 12345, (("f", 3), ("d", 2)), 4),
    BenchRow("nt", ("g",), 1, 999, (("f", 1), ("b", 1)), 5),
    BenchRow("nti", ("q",), 3, 1, (), 0),
]


@pytest.mark.parametrize("fmt", ["jsonl", "tsv"])
def test_round_trip(tmp_path, fmt):
    p = tmp_path / f"report.{fmt}"
    emit_report(SAMPLE, p, fmt)
    assert read_report(p, fmt) == SAMPLE


def test_jsonl_field_names_and_order(tmp_path):
    p = tmp_path / "r.jsonl"
    emit_report(SAMPLE[:1], p, "jsonl")
    obj = json.loads(p.read_text().splitlines()[0])
    assert list(obj) == ["engine", "query_tokens", "k", "elapsed_ns", "result", "visited"]
    assert obj["result"] == [{"item": "f", "count": 3}, {"item": "d", "count": 2}]


def test_tsv_layout(tmp_path):
    p = tmp_path / "r.tsv"
    emit_report(SAMPLE[:1], p, "tsv")
    lines = p.read_text().splitlines()
    assert lines[0] == "engine\tquery_tokens\tk\telapsed_ns\tresult\tvisited"
    assert lines[1] == "pt\ta,c\t2\t12345\tf:3,d:2\t4"


def test_empty_reports(tmp_path):
    pj = tmp_path / "e.jsonl"
    emit_report([], pj, "jsonl")
    assert pj.read_text() == ""
    assert read_report(pj, "jsonl") == []
    pt = tmp_path / "e.tsv"
    emit_report([], pt, "tsv")
    assert pt.read_text() == "engine\tquery_tokens\tk\telapsed_ns\tresult\tvisited\n"
    assert read_report(pt, "tsv") == []


def test_unknown_format(tmp_path):
    with pytest.raises(ValueError, match="format"):
        emit_report([], tmp_path / "x", "csv")
    with pytest.raises(ValueError, match="format"):
        read_report(tmp_path / "x", "csv")


tokens = st.text(alphabet="abcdefghij0123456789_", min_size=1, max_size=6)
rows = st.lists(
    st.builds(
        BenchRow,
        engine=st.sampled_from(["nt", "nt-ta", "nti", "nti-ta", "pt", "pt-ta"]),
        query_tokens=st.lists(tokens, min_size=1, max_size=5).map(tuple),
        k=st.integers(1, 50),
        elapsed_ns=st.integers(0, 10**12),
        result=st.lists(
            st.tuples(tokens, st.integers(0, 10**6)), min_size=0, max_size=6
        ).map(tuple),
        visited=st.integers(0, 10**9),
    ),
    max_size=8,
)


@given(rows, st.sampled_from(["jsonl", "tsv"]))
@settings(max_examples=60)
def test_round_trip_random(tmp_path_factory, rs, fmt):
    p = tmp_path_factory.mktemp("rep") / "r.out"
    emit_report(rs, p, fmt)
    assert read_report(p, fmt) == rs


def test_scale_report_round_trip_layout(tmp_path):
    rows = [
        ScaleRow(1, "nti", 1000.0, 1.0),
        ScaleRow(2, "nti", 2100.5, 2.1005),
        ScaleRow(2, "pt", 900.0, 1.125),
    ]
    pj = tmp_path / "s.jsonl"
    emit_scale_report(rows, pj, "jsonl")
    objs = [json.loads(l) for l in pj.read_text().splitlines()]
    assert objs[0] == {"multiplier": 1, "engine": "nti", "mean_elapsed_ns": 1000.0, "ratio": 1.0}
    pt = tmp_path / "s.tsv"
    emit_scale_report(rows, pt, "tsv")
    lines = pt.read_text().splitlines()
    assert lines[0] == "multiplier\tengine\tmean_elapsed_ns\tratio"
    assert lines[1].startswith("1\tnti\t")
