"""Dataset loading, synthesis, and query workload generation.

The on-disk format is the plain transaction layout used by the FIMI repository
datasets: one transaction per line, whitespace-separated tokens, blank lines
ignored. Synthetic databases come from a pattern-pool sampler so that density
and inter-item correlation can be dialed up or down for benchmarks.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .model import TransactionDatabase


def load_fimi(path: str | os.PathLike[str]) -> TransactionDatabase:
    """Read a whitespace-separated transaction file.

    Any run of spaces or tabs separates tokens, blank (or all-whitespace)
    lines are skipped, duplicate tokens inside a line collapse, and TIDs are
    the 1-based positions of the surviving lines.
    """
    with open(path, "r", encoding="utf-8") as fh:
        rows = (line.split() for line in fh)
        return TransactionDatabase.from_token_rows(rows)


def write_fimi(db: TransactionDatabase, path: str | os.PathLike[str]) -> None:
    """Write one transaction per line, single-space separated, LF endings.

    Tokens go out in ascending id order, which makes load_fimi(write_fimi(db))
    reproduce the database exactly, dictionary included.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in db.token_rows():
            fh.write(" ".join(row))
            fh.write("\n")


@dataclass(frozen=True)
class SyntheticParams:
    """Knobs for the pattern-pool generator."""

    n_transactions: int
    n_items: int
    avg_trans_len: float
    n_patterns: int = 10
    avg_pattern_len: float = 4.0
    correlation: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_transactions < 1:
            raise ValueError("n_transactions must be >= 1")
        if self.n_items < 1:
            raise ValueError("n_items must be >= 1")
        if self.avg_trans_len < 1:
            raise ValueError("avg_trans_len must be >= 1")
        if self.n_patterns < 1:
            raise ValueError("n_patterns must be >= 1")
        if self.avg_pattern_len < 1:
            raise ValueError("avg_pattern_len must be >= 1")
        if self.avg_pattern_len > self.avg_trans_len:
            raise ValueError("avg_pattern_len must not exceed avg_trans_len")
        if not 0.0 <= self.correlation <= 1.0:
            raise ValueError("correlation must lie in [0, 1]")

    def scaled(self, multiplier: int) -> "SyntheticParams":
        return replace(self, n_transactions=self.n_transactions * multiplier)


# Cap on pattern draws per transaction before falling back to padding; keeps
# the loop finite when correlation is so low that patterns contribute nothing.
_MAX_PATTERN_DRAWS = 8


def generate_synthetic(params: SyntheticParams) -> TransactionDatabase:
    """Generate a transaction database from a weighted pattern pool.

    Procedure, fully determined by params.seed:

    * item popularity follows exponentially decaying weights, so low-numbered
      items are common and the tail is rare;
    * a pool of n_patterns itemsets is drawn up front, each with a
      Poisson(avg_pattern_len) size and popularity-weighted members;
    * every pattern receives a normalized exponential weight;
    * each transaction draws a Poisson(avg_trans_len) target size, then samples
      patterns by weight, keeping each pattern item independently with
      probability `correlation`, until the target is reached (the last pattern
      may overshoot); popularity-weighted single items pad any shortfall.

    Tokens are the decimal strings "0" .. str(n_items - 1).
    """
    rng = np.random.default_rng(params.seed)
    m = params.n_items

    popularity = np.exp(-4.0 * np.arange(m) / m)
    popularity /= popularity.sum()
    pop_cdf = np.cumsum(popularity)

    sizes = rng.poisson(params.avg_pattern_len, size=params.n_patterns)
    sizes = np.clip(sizes, 1, m)
    patterns: list[np.ndarray] = [
        rng.choice(m, size=int(s), replace=False, p=popularity) for s in sizes
    ]
    pat_weights = rng.exponential(1.0, size=params.n_patterns)
    pat_cdf = np.cumsum(pat_weights / pat_weights.sum())

    corr = params.correlation
    rows: list[list[str]] = []
    for _ in range(params.n_transactions):
        target = min(m, max(1, int(rng.poisson(params.avg_trans_len))))
        chosen: list[int] = []
        members: set[int] = set()
        draws = 0
        while len(members) < target and draws < _MAX_PATTERN_DRAWS:
            draws += 1
            pat = patterns[int(np.searchsorted(pat_cdf, rng.random()))]
            if corr >= 1.0:
                kept = pat
            else:
                kept = pat[rng.random(len(pat)) < corr]
            for item in kept:
                item = int(item)
                if item not in members:
                    members.add(item)
                    chosen.append(item)
        fallback = 0
        while len(members) < target and fallback < 50 * target:
            fallback += 1
            item = int(np.searchsorted(pop_cdf, rng.random()))
            if item not in members:
                members.add(item)
                chosen.append(item)
        if not chosen:
            chosen.append(int(np.searchsorted(pop_cdf, rng.random())))
        rows.append([str(i) for i in chosen])
    return TransactionDatabase.from_token_rows(rows)


@dataclass(frozen=True)
class QueryWorkload:
    """A batch of same-length query itemsets, in tokens."""

    queries: tuple[tuple[str, ...], ...]
    length: int
    seed: int


def generate_queries(
    db: TransactionDatabase, length: int, count: int, seed: int
) -> QueryWorkload:
    """Draw `count` queries of `length` distinct items from random transactions.

    Each query picks a uniformly random transaction and samples `length` of its
    items without replacement; transactions shorter than `length` are re-drawn.
    Guaranteed non-vacuous: the source transaction contains every query.
    """
    if length < 1:
        raise ValueError("query length must be >= 1")
    if count < 0:
        raise ValueError("query count must be >= 0")
    if not any(len(txn) >= length for txn in db.transactions):
        raise ValueError(
            f"workload infeasible: no transaction has >= {length} items"
        )
    rng = np.random.default_rng(seed)
    tok = db.dictionary.id_to_token
    n = db.n_transactions
    queries: list[tuple[str, ...]] = []
    for _ in range(count):
        while True:
            txn = db.transactions[int(rng.integers(n))]
            if len(txn) >= length:
                break
        picked = rng.choice(len(txn), size=length, replace=False)
        queries.append(tuple(tok[txn[int(j)]] for j in picked))
    return QueryWorkload(tuple(queries), length, seed)
