"""Full-scan query engines.

nt_query walks every transaction and counts co-occurring items directly.
nt_ta_query keeps the same counting but maintains a running lower bound (the
k-th best count held so far) against an upper bound on what any outside item
could still reach (its best current count plus the number of unvisited
transactions). Once the lower bound exceeds the upper bound no outside item can
enter the answer, so candidate admission stops and only the locked items are
counted to exactness over the remaining scan.
"""

from __future__ import annotations

import heapq
from typing import Sequence

from .model import Query, QueryStats, TopKResult, TransactionDatabase, finalize_topk


def contains_sorted(txn: Sequence[int], wanted: Sequence[int]) -> bool:
    """Subset test between two ascending id sequences, early-exit on a miss."""
    j = 0
    limit = len(wanted)
    w = wanted[0]
    for x in txn:
        if x < w:
            continue
        if x == w:
            j += 1
            if j == limit:
                return True
            w = wanted[j]
        elif x > w:
            return False
    return False


def nt_query(db: TransactionDatabase, q: Query) -> tuple[TopKResult, QueryStats]:
    """Scan the whole database, counting co-occurrences for every item."""
    wanted = tuple(sorted(q.items))
    pset = frozenset(q.items)
    counts: dict[int, int] = {}
    for txn in db.transactions:
        if contains_sorted(txn, wanted):
            for i in txn:
                if i not in pset:
                    counts[i] = counts.get(i, 0) + 1
    result = finalize_topk(counts, q.k, db.rank_order)
    return result, QueryStats(work=db.n_transactions)


class TaState:
    """Bound bookkeeping for threshold-pruned counting.

    Holds the running count table, the locked top-k set (bound-tied items
    included), the k-th best count among locked items (0 until k items have
    been seen), and a lazy max-heap over outsider counts. unvisited tracks how
    many scan units remain, which caps how far any outsider can still climb.
    """

    __slots__ = ("k", "counts", "topk", "lower_bound", "unvisited", "_heap")

    def __init__(self, k: int, total: int) -> None:
        self.k = k
        self.counts: dict[int, int] = {}
        self.topk: set[int] = set()
        self.lower_bound = 0
        self.unvisited = total
        self._heap: list[tuple[int, int]] = []

    def observe(self, item: int) -> None:
        """Count one co-occurrence and keep the bounds consistent."""
        c = self.counts.get(item, 0) + 1
        self.counts[item] = c
        if item in self.topk:
            # The k-th best can only move when a bound-tied member grows.
            if c - 1 == self.lower_bound:
                self._refresh()
        elif c >= self.lower_bound:
            self.topk.add(item)
            self._refresh()
        else:
            heapq.heappush(self._heap, (-c, item))

    def _refresh(self) -> None:
        counts = self.counts
        members = [counts[i] for i in self.topk]
        if len(members) >= self.k:
            bar = heapq.nlargest(self.k, members)[-1]
        else:
            bar = 0
        self.lower_bound = bar
        if bar:
            dropped = [i for i in self.topk if counts[i] < bar]
            for i in dropped:
                self.topk.discard(i)
                heapq.heappush(self._heap, (-counts[i], i))
        if __debug__:
            assert all(counts[i] >= self.lower_bound for i in self.topk)

    def best_outside(self) -> int:
        """Largest current count held by any item outside the locked set."""
        heap = self._heap
        counts = self.counts
        topk = self.topk
        while heap:
            negc, item = heap[0]
            if item not in topk and counts.get(item) == -negc:
                return -negc
            heapq.heappop(heap)
        return 0

    def finish_unit(self) -> bool:
        """Account for one finished scan unit; True when outsiders are dead.

        An outsider can finish with at most best_outside() + unvisited, so once
        the locked k-th best strictly exceeds that, the answer set is closed.
        """
        self.unvisited -= 1
        return self.lower_bound > self.best_outside() + self.unvisited

    def snapshot(self) -> dict[str, object]:
        return {
            "lower_bound": self.lower_bound,
            "best_outside": self.best_outside(),
            "unvisited": self.unvisited,
            "counts": dict(self.counts),
            "topk": frozenset(self.topk),
        }


def threshold_scan(
    transactions: Sequence[tuple[int, ...]],
    q: Query,
    check_containment: bool,
    exact: bool = True,
    trace: list[dict[str, object]] | None = None,
) -> tuple[dict[int, int], set[int], int, bool]:
    """Bounded counting scan shared by nt_ta_query and nti_ta_query.

    Returns (count table, locked set at stop, units visited while admission was
    open, whether the bound fired). When the bound never fires the counts cover
    every co-occurring item and are exact. After an early stop the table is
    restricted to the locked items; with exact=True a finalization pass rescans
    the remaining units so those counts are exact, otherwise they stay partial.
    """
    wanted = tuple(sorted(q.items))
    pset = frozenset(q.items)
    state = TaState(q.k, len(transactions))
    stopped_at: int | None = None
    for pos, txn in enumerate(transactions):
        if not check_containment or contains_sorted(txn, wanted):
            for i in txn:
                if i not in pset:
                    state.observe(i)
        done = state.finish_unit()
        if trace is not None:
            trace.append(state.snapshot())
        if done:
            stopped_at = pos + 1
            break
    if stopped_at is None:
        return state.counts, set(state.topk), len(transactions), False
    locked = set(state.topk)
    table = {i: state.counts[i] for i in locked}
    if exact:
        for txn in transactions[stopped_at:]:
            if not check_containment or contains_sorted(txn, wanted):
                for i in txn:
                    if i in locked:
                        table[i] += 1
    return table, locked, stopped_at, True


def nt_ta_query(
    db: TransactionDatabase,
    q: Query,
    exact: bool = True,
    trace: list[dict[str, object]] | None = None,
) -> tuple[TopKResult, QueryStats]:
    """Threshold-pruned full scan; identical output to nt_query.

    With exact=False an early-terminated run skips the finalization rescan and
    returns the partial counts, flagged via TopKResult.exact_counts.
    """
    counts, locked, visited, stopped = threshold_scan(
        db.transactions, q, check_containment=True, exact=exact, trace=trace
    )
    # Counts are complete unless finalization was skipped with units unscanned.
    complete = exact or not stopped or visited == db.n_transactions
    result = finalize_topk(counts, q.k, db.rank_order, exact_counts=complete)
    stats = QueryStats(
        work=visited,
        early_stop=stopped,
        ta_stopped_after=visited if stopped else None,
        ta_topk_at_stop=frozenset(locked) if stopped else None,
    )
    return result, stats
