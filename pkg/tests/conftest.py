from __future__ import annotations

import random

import pytest

from cooccur.model import Query, TransactionDatabase

# The worked five-transaction example used across the golden tests.
EXAMPLE_ROWS = [
    ["b", "f", "g"],
    ["a", "b", "c", "f"],
    ["a", "c", "d", "f"],
    ["b", "c", "e"],
    ["a", "c", "d", "e", "f"],
]


@pytest.fixture(scope="session")
def example_db() -> TransactionDatabase:
    return TransactionDatabase.from_token_rows(EXAMPLE_ROWS)


def ids_for(db: TransactionDatabase, tokens: str) -> tuple[int, ...]:
    """Map a compact token string like "ac" to item ids (single-char tokens)."""
    out = []
    for ch in tokens:
        ident = db.dictionary.id_for(ch)
        assert ident is not None, f"unknown token {ch!r}"
        out.append(ident)
    return tuple(out)


def make_query(db: TransactionDatabase, tokens: str, k: int) -> Query:
    return Query(db.rank_order.sort_items(ids_for(db, tokens)), k)


def entries_tokens(db: TransactionDatabase, entries) -> list[tuple[str, int]]:
    tok = db.dictionary.id_to_token
    return [(tok[i], c) for i, c in entries]


def random_db(
    rng: random.Random,
    max_items: int = 12,
    max_rows: int = 40,
    skewed: bool = False,
) -> TransactionDatabase:
    """Small random database; skewed mode duplicates one block of rows so the
    threshold engines get a real chance to terminate early."""
    m = rng.randint(2, max_items)
    items = [f"i{j}" for j in range(m)]
    n = rng.randint(1, max_rows)
    rows: list[list[str]] = []
    for _ in range(n):
        size = rng.randint(1, m)
        rows.append(rng.sample(items, size))
    if skewed and rows:
        block = rng.choice(rows)
        rows.extend([list(block)] * rng.randint(5, 60))
        rng.shuffle(rows)
    return TransactionDatabase.from_token_rows(rows)


def random_contained_query(
    rng: random.Random, db: TransactionDatabase, max_len: int = 6
) -> Query | None:
    """Query drawn from a random transaction, so it has at least one match."""
    candidates = [t for t in db.transactions if t]
    if not candidates:
        return None
    txn = rng.choice(candidates)
    length = rng.randint(1, min(max_len, len(txn)))
    picked = rng.sample(list(txn), length)
    k = rng.randint(1, db.n_items)
    return Query(db.rank_order.sort_items(picked), k)


def random_any_query(
    rng: random.Random, db: TransactionDatabase, max_len: int = 6
) -> Query:
    """Arbitrary item subset; may match nothing at all."""
    length = rng.randint(1, min(max_len, db.n_items))
    picked = rng.sample(range(db.n_items), length)
    k = rng.randint(1, db.n_items)
    return Query(db.rank_order.sort_items(picked), k)
