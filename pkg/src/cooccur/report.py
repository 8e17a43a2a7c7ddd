"""Benchmark report rows and their delimited serializations.

Two formats carry the same columns in the same order: engine, query_tokens, k,
elapsed_ns, result, visited. JSON-lines writes one object per row; TSV writes a
header line plus one row per line with the query tokens comma-joined and the
result as comma-joined item:count pairs. Both round-trip through read_report.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

FORMATS = ("jsonl", "tsv")

_TSV_COLUMNS = ("engine", "query_tokens", "k", "elapsed_ns", "result", "visited")


@dataclass(frozen=True)
class BenchRow:
    """One timed engine invocation."""

    engine: str
    query_tokens: tuple[str, ...]
    k: int
    elapsed_ns: int
    result: tuple[tuple[str, int], ...]
    visited: int


def emit_report(
    rows: Iterable[BenchRow], path: str | os.PathLike[str], format: str = "jsonl"
) -> None:
    """Write rows to path in the chosen format (LF line endings)."""
    if format not in FORMATS:
        raise ValueError(f"unknown report format: {format!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if format == "jsonl":
            for row in rows:
                fh.write(row_to_json(row))
                fh.write("\n")
        else:
            fh.write("\t".join(_TSV_COLUMNS))
            fh.write("\n")
            for row in rows:
                fh.write(row_to_tsv(row))
                fh.write("\n")


def read_report(
    path: str | os.PathLike[str], format: str = "jsonl"
) -> list[BenchRow]:
    """Parse a report file written by emit_report."""
    if format not in FORMATS:
        raise ValueError(f"unknown report format: {format!r}")
    rows: list[BenchRow] = []
    with open(path, "r", encoding="utf-8") as fh:
        if format == "jsonl":
            for line in fh:
                line = line.strip()
                if line:
                    rows.append(row_from_json(line))
        else:
            header = fh.readline().rstrip("\n")
            if header and tuple(header.split("\t")) != _TSV_COLUMNS:
                raise ValueError("unrecognized tsv header")
            for line in fh:
                line = line.rstrip("\n")
                if line:
                    rows.append(row_from_tsv(line))
    return rows


def row_to_json(row: BenchRow) -> str:
    obj = {
        "engine": row.engine,
        "query_tokens": list(row.query_tokens),
        "k": row.k,
        "elapsed_ns": row.elapsed_ns,
        "result": [{"item": t, "count": c} for t, c in row.result],
        "visited": row.visited,
    }
    return json.dumps(obj, separators=(",", ":"))


def row_from_json(line: str) -> BenchRow:
    obj = json.loads(line)
    return BenchRow(
        engine=obj["engine"],
        query_tokens=tuple(obj["query_tokens"]),
        k=int(obj["k"]),
        elapsed_ns=int(obj["elapsed_ns"]),
        result=tuple((e["item"], int(e["count"])) for e in obj["result"]),
        visited=int(obj["visited"]),
    )


def row_to_tsv(row: BenchRow) -> str:
    result = ",".join(f"{t}:{c}" for t, c in row.result)
    return "\t".join(
        (
            row.engine,
            ",".join(row.query_tokens),
            str(row.k),
            str(row.elapsed_ns),
            result,
            str(row.visited),
        )
    )


def row_from_tsv(line: str) -> BenchRow:
    engine, tokens, k, elapsed, result, visited = line.split("\t")
    entries: list[tuple[str, int]] = []
    if result:
        for part in result.split(","):
            token, _, count = part.rpartition(":")
            entries.append((token, int(count)))
    return BenchRow(
        engine=engine,
        query_tokens=tuple(tokens.split(",")) if tokens else (),
        k=int(k),
        elapsed_ns=int(elapsed),
        result=tuple(entries),
        visited=int(visited),
    )


@dataclass(frozen=True)
class ScaleRow:
    """One (multiplier, engine) point of a scalability sweep."""

    multiplier: int
    engine: str
    mean_elapsed_ns: float
    ratio: float


_SCALE_COLUMNS = ("multiplier", "engine", "mean_elapsed_ns", "ratio")


def emit_scale_report(
    rows: Sequence[ScaleRow], path: str | os.PathLike[str], format: str = "jsonl"
) -> None:
    """Write scalability rows; same format conventions as emit_report."""
    if format not in FORMATS:
        raise ValueError(f"unknown report format: {format!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if format == "jsonl":
            for row in rows:
                obj = {
                    "multiplier": row.multiplier,
                    "engine": row.engine,
                    "mean_elapsed_ns": row.mean_elapsed_ns,
                    "ratio": row.ratio,
                }
                fh.write(json.dumps(obj, separators=(",", ":")))
                fh.write("\n")
        else:
            fh.write("\t".join(_SCALE_COLUMNS))
            fh.write("\n")
            for row in rows:
                fh.write(
                    "\t".join(
                        (
                            str(row.multiplier),
                            row.engine,
                            repr(row.mean_elapsed_ns),
                            repr(row.ratio),
                        )
                    )
                )
                fh.write("\n")
