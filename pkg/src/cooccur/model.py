"""Core data model shared by every query engine.

A transaction database is a list of duplicate-free item sets. Items are interned
to dense integer ids so the engines can work with tuples of ints; the dictionary
keeps the id <-> token mapping. Queries and results are expressed in ids at this
layer, tokens only at the I/O edges.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence


class ItemDictionary:
    """Token <-> dense-id interning, ids assigned by first appearance."""

    def __init__(self) -> None:
        self.token_to_id: dict[str, int] = {}
        self.id_to_token: list[str] = []

    def intern(self, token: str) -> int:
        ident = self.token_to_id.get(token)
        if ident is None:
            ident = len(self.id_to_token)
            self.token_to_id[token] = ident
            self.id_to_token.append(token)
        return ident

    def id_for(self, token: str) -> int | None:
        return self.token_to_id.get(token)

    def token_for(self, ident: int) -> str:
        return self.id_to_token[ident]

    def __len__(self) -> int:
        return len(self.id_to_token)


class TransactionDatabase:
    """Immutable-by-convention transaction store.

    transactions[t] is a strictly ascending tuple of item ids; the transaction's
    TID is t + 1 (1-based, file order). support[i] counts the transactions that
    contain item i.
    """

    def __init__(
        self,
        transactions: list[tuple[int, ...]],
        support: list[int],
        dictionary: ItemDictionary,
    ) -> None:
        self.transactions = transactions
        self.support = support
        self.dictionary = dictionary
        self._rank_order: RankOrder | None = None

    @classmethod
    def from_token_rows(cls, rows: Iterable[Sequence[str]]) -> "TransactionDatabase":
        """Build a database from token sequences.

        Empty rows are skipped, duplicate tokens within a row collapse to one
        occurrence, and ids are handed out in order of first appearance across
        the whole stream.
        """
        dictionary = ItemDictionary()
        transactions: list[tuple[int, ...]] = []
        support: list[int] = []
        for row in rows:
            if not row:
                continue
            ids = set()
            for token in row:
                ids.add(dictionary.intern(token))
            while len(support) < len(dictionary):
                support.append(0)
            for ident in ids:
                support[ident] += 1
            transactions.append(tuple(sorted(ids)))
        return cls(transactions, support, dictionary)

    def token_rows(self) -> Iterable[tuple[str, ...]]:
        tok = self.dictionary.id_to_token
        for txn in self.transactions:
            yield tuple(tok[i] for i in txn)

    @property
    def n_transactions(self) -> int:
        return len(self.transactions)

    @property
    def n_items(self) -> int:
        return len(self.dictionary)

    @property
    def rank_order(self) -> "RankOrder":
        if self._rank_order is None:
            self._rank_order = build_rank_order(self)
        return self._rank_order

    def validate(self) -> None:
        """Recount everything and compare with the stored aggregates."""
        recount = [0] * self.n_items
        for txn in self.transactions:
            assert txn, "empty transaction stored"
            assert list(txn) == sorted(set(txn)), "transaction not a sorted id set"
            for i in txn:
                recount[i] += 1
        assert recount == self.support, "support counters out of sync"
        assert len(self.support) == self.n_items


@dataclass(frozen=True)
class RankOrder:
    """Frequency ordering of item ids: most frequent first, token breaks ties.

    rank[i] is the position of item i (0 = most frequent); order[r] is the item
    at position r. The two arrays are inverse permutations of each other.
    """

    rank: tuple[int, ...]
    order: tuple[int, ...]

    def sort_items(self, items: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(items, key=self.rank.__getitem__))


def build_rank_order(db: TransactionDatabase) -> RankOrder:
    """Order items by descending support, ascending token on ties."""
    tokens = db.dictionary.id_to_token
    order = sorted(range(db.n_items), key=lambda i: (-db.support[i], tokens[i]))
    rank = [0] * db.n_items
    for pos, ident in enumerate(order):
        rank[ident] = pos
    return RankOrder(tuple(rank), tuple(order))


@dataclass(frozen=True)
class Query:
    """Canonical query: duplicate-free item ids sorted by rank, plus k.

    items[0] is the most frequent query item; items[-1] the least frequent.
    """

    items: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if not self.items:
            raise ValueError("query must be non-empty")
        if len(set(self.items)) != len(self.items):
            raise ValueError("query items must be duplicate-free")
        if self.k < 1:
            raise ValueError("k must be >= 1")


def canonicalize_query(
    raw_tokens: Sequence[str],
    db: TransactionDatabase,
    order: RankOrder,
    k: int,
) -> Query | None:
    """Resolve raw tokens against the dictionary and sort them by rank.

    Returns None when some token does not occur in the database at all; the
    caller can answer such a query with an empty result without running any
    engine. Raises on an empty token list or a non-positive k.
    """
    if not raw_tokens:
        raise ValueError("query must be non-empty")
    if k < 1:
        raise ValueError("k must be >= 1")
    ids: list[int] = []
    seen: set[int] = set()
    for token in raw_tokens:
        ident = db.dictionary.id_for(token)
        if ident is None:
            return None
        if ident not in seen:
            seen.add(ident)
            ids.append(ident)
    return Query(order.sort_items(ids), k)


@dataclass(frozen=True)
class TopKResult:
    """Ranked answer: (item id, co-occurrence count) pairs.

    Entries are sorted by count descending, rank ascending, id ascending, and
    include every item tied with the k-th largest count, so the sequence may be
    longer than k. exact_counts is False only when a threshold engine was asked
    to skip its exact finalization pass.
    """

    entries: tuple[tuple[int, int], ...]
    exact_counts: bool = True

    def items(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)


EMPTY_RESULT = TopKResult(())


@dataclass(frozen=True)
class QueryStats:
    """Work accounting for one engine invocation.

    work is the engine's headline counter: transactions examined for the scan
    engines, matching transactions for the inverted-list engines, and desirable
    nodes plus visited subtree nodes for the tree engines. The ta_* fields are
    populated only by threshold variants that ended candidate admission early.
    """

    work: int
    early_stop: bool = False
    ta_stopped_after: int | None = None
    ta_topk_at_stop: frozenset[int] | None = None


def finalize_topk(
    counts: dict[int, int],
    k: int,
    order: RankOrder,
    exact_counts: bool = True,
) -> TopKResult:
    """Select the top-k co-occurrence items from a count table, keeping ties.

    The cut value is the k-th largest count in the table (all entries qualify
    when the table has fewer than k). Ordering follows the TopKResult contract.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not counts:
        return TopKResult((), exact_counts)
    if len(counts) <= k:
        cut = min(counts.values())
    else:
        cut = heapq.nlargest(k, counts.values())[-1]
    rank = order.rank
    kept = sorted(
        ((i, c) for i, c in counts.items() if c >= cut),
        key=lambda e: (-e[1], rank[e[0]], e[0]),
    )
    return TopKResult(tuple(kept), exact_counts)
