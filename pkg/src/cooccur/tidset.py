"""Inverted-list query engines.

An index maps every item to the ascending list of TIDs containing it. A query
intersects its items' lists (smallest first, so intermediate results shrink as
fast as possible) to materialize the matching sub-database, then counts
co-occurrences only over those transactions. The threshold variant runs the
same bounded scan as the naive engine, but over the matching transactions only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import Query, QueryStats, TopKResult, TransactionDatabase, finalize_topk
from .naive import threshold_scan


@dataclass(frozen=True)
class TidSetIndex:
    """Per-item ascending TID lists, built once per database."""

    lists: tuple[tuple[int, ...], ...]

    def total_tids(self) -> int:
        return sum(len(l) for l in self.lists)


def build_tidsets(db: TransactionDatabase) -> TidSetIndex:
    """Single pass over the database collecting each item's TID list."""
    lists: list[list[int]] = [[] for _ in range(db.n_items)]
    for tid, txn in enumerate(db.transactions, start=1):
        for i in txn:
            lists[i].append(tid)
    return TidSetIndex(tuple(tuple(l) for l in lists))


def intersect(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Linear merge of two ascending sequences."""
    out: list[int] = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return tuple(out)


def project(
    db: TransactionDatabase, q: Query, idx: TidSetIndex
) -> tuple[int, ...]:
    """TIDs of the transactions containing every query item.

    Folds the intersection starting from the shortest list; an empty running
    result short-circuits.
    """
    lists = sorted((idx.lists[i] for i in q.items), key=len)
    acc = lists[0]
    for other in lists[1:]:
        if not acc:
            break
        acc = intersect(acc, other)
    return tuple(acc)


def nti_query(
    db: TransactionDatabase, idx: TidSetIndex, q: Query
) -> tuple[TopKResult, QueryStats]:
    """Count co-occurrences over the projected sub-database only."""
    tids = project(db, q, idx)
    pset = frozenset(q.items)
    counts: dict[int, int] = {}
    transactions = db.transactions
    for tid in tids:
        for i in transactions[tid - 1]:
            if i not in pset:
                counts[i] = counts.get(i, 0) + 1
    result = finalize_topk(counts, q.k, db.rank_order)
    return result, QueryStats(work=len(tids))


def nti_ta_query(
    db: TransactionDatabase,
    idx: TidSetIndex,
    q: Query,
    exact: bool = True,
    trace: list[dict[str, object]] | None = None,
) -> tuple[TopKResult, QueryStats]:
    """Threshold-pruned scan over the projected sub-database.

    Every projected transaction contains the query by construction, so the
    containment check is skipped and the unvisited budget starts at the
    projection size rather than the database size.
    """
    tids = project(db, q, idx)
    transactions = db.transactions
    matching = [transactions[tid - 1] for tid in tids]
    counts, locked, visited, stopped = threshold_scan(
        matching, q, check_containment=False, exact=exact, trace=trace
    )
    complete = exact or not stopped or visited == len(matching)
    result = finalize_topk(counts, q.k, db.rank_order, exact_counts=complete)
    stats = QueryStats(
        work=visited,
        early_stop=stopped,
        ta_stopped_after=visited if stopped else None,
        ta_topk_at_stop=frozenset(locked) if stopped else None,
    )
    return result, stats
