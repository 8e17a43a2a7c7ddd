"""Brute-force reference answers, kept deliberately separate from the engines.

Counting here runs on per-transaction membership bitmasks and integer bit
tricks, a different mechanism from the incremental dict counting the engines
use, so agreement between the two is meaningful evidence rather than the same
code run twice.
"""

from __future__ import annotations

import weakref

from .model import Query, RankOrder, TopKResult, TransactionDatabase, finalize_topk

_mask_cache: "weakref.WeakKeyDictionary[TransactionDatabase, list[int]]" = (
    weakref.WeakKeyDictionary()
)


def _transaction_masks(db: TransactionDatabase) -> list[int]:
    masks = _mask_cache.get(db)
    if masks is None:
        masks = []
        for txn in db.transactions:
            m = 0
            for i in txn:
                m |= 1 << i
            masks.append(m)
        _mask_cache[db] = masks
    return masks


def oracle_co_counts(db: TransactionDatabase, q: Query) -> dict[int, int]:
    """Count, for every non-query item, the transactions containing q plus it."""
    pmask = 0
    for i in q.items:
        pmask |= 1 << i
    counts: dict[int, int] = {}
    for tmask in _transaction_masks(db):
        if tmask & pmask != pmask:
            continue
        rest = tmask & ~pmask
        while rest:
            low = rest & -rest
            ident = low.bit_length() - 1
            counts[ident] = counts.get(ident, 0) + 1
            rest ^= low
    return counts


def oracle_topk(
    db: TransactionDatabase,
    q: Query,
    k: int | None = None,
    order: RankOrder | None = None,
) -> TopKResult:
    """Reference top-k answer: finalize the brute-force count table."""
    if k is None:
        k = q.k
    if order is None:
        order = db.rank_order
    return finalize_topk(oracle_co_counts(db, q), k, order)
