from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cooccur.model import (
    Query,
    TopKResult,
    TransactionDatabase,
    build_rank_order,
    canonicalize_query,
    finalize_topk,
)

from conftest import EXAMPLE_ROWS, entries_tokens, ids_for, make_query


def test_from_token_rows_dedup_and_first_appearance():
    db = TransactionDatabase.from_token_rows([["b", "a", "b"], ["c", "a"]])
    assert db.dictionary.id_to_token == ["b", "a", "c"]
    assert db.transactions == [(0, 1), (1, 2)]
    assert db.support == [1, 2, 1]
    db.validate()


def test_from_token_rows_skips_empty_rows():
    db = TransactionDatabase.from_token_rows([[], ["x"], []])
    assert db.n_transactions == 1


def test_example_rank_order(example_db):
    order = example_db.rank_order
    tokens = [example_db.dictionary.id_to_token[i] for i in order.order]
    assert tokens == ["c", "f", "a", "b", "d", "e", "g"]


def test_rank_order_tie_breaks_on_token():
    db = TransactionDatabase.from_token_rows([["b"], ["a"]])
    tokens = [db.dictionary.id_to_token[i] for i in db.rank_order.order]
    assert tokens == ["a", "b"]


def test_rank_order_empty_db():
    db = TransactionDatabase.from_token_rows([])
    order = build_rank_order(db)
    assert order.order == () and order.rank == ()


token_rows = st.lists(
    st.lists(st.sampled_from([f"i{j}" for j in range(9)]), min_size=1, max_size=9),
    min_size=1,
    max_size=30,
)


@given(token_rows)
def test_rank_order_is_sorted_permutation(rows):
    db = TransactionDatabase.from_token_rows(rows)
    order = build_rank_order(db)
    assert sorted(order.order) == list(range(db.n_items))
    assert all(order.order[order.rank[i]] == i for i in range(db.n_items))
    supports = [db.support[i] for i in order.order]
    assert supports == sorted(supports, reverse=True)
    tokens = db.dictionary.id_to_token
    for a, b in zip(order.order, order.order[1:]):
        if db.support[a] == db.support[b]:
            assert tokens[a] < tokens[b]


def test_canonicalize_sorts_by_rank(example_db):
    q = canonicalize_query(["a", "c"], example_db, example_db.rank_order, 2)
    assert entries_tokens(example_db, [(i, 0) for i in q.items]) == [("c", 0), ("a", 0)]
    assert q.k == 2


def test_canonicalize_dedups(example_db):
    q = canonicalize_query(["c", "c"], example_db, example_db.rank_order, 1)
    assert q.items == ids_for(example_db, "c")


def test_canonicalize_unknown_token_is_sentinel(example_db):
    q = canonicalize_query(["c", "zzz"], example_db, example_db.rank_order, 1)
    assert q is None


def test_canonicalize_rejects_empty(example_db):
    with pytest.raises(ValueError, match="non-empty"):
        canonicalize_query([], example_db, example_db.rank_order, 1)


def test_canonicalize_rejects_bad_k(example_db):
    with pytest.raises(ValueError, match="k must be"):
        canonicalize_query(["c"], example_db, example_db.rank_order, 0)


def test_query_validation():
    with pytest.raises(ValueError):
        Query((), 1)
    with pytest.raises(ValueError):
        Query((1, 1), 1)
    with pytest.raises(ValueError):
        Query((1,), 0)


def test_finalize_example_counts(example_db):
    order = example_db.rank_order
    f, d, b, e = ids_for(example_db, "fdbe")
    counts = {f: 3, d: 2, b: 1, e: 1}
    top2 = finalize_topk(counts, 2, order)
    assert entries_tokens(example_db, top2.entries) == [("f", 3), ("d", 2)]
    top3 = finalize_topk(counts, 3, order)
    assert entries_tokens(example_db, top3.entries) == [
        ("f", 3),
        ("d", 2),
        ("b", 1),
        ("e", 1),
    ]
    top10 = finalize_topk(counts, 10, order)
    assert len(top10.entries) == 4
    assert top10.exact_counts


def test_finalize_empty_and_bad_k(example_db):
    order = example_db.rank_order
    assert finalize_topk({}, 3, order) == TopKResult(())
    with pytest.raises(ValueError):
        finalize_topk({0: 1}, 0, order)


def test_finalize_tie_order_uses_rank(example_db):
    # f and a tie at 3; f has the better rank so it leads.
    order = example_db.rank_order
    a, f = ids_for(example_db, "af")
    res = finalize_topk({a: 3, f: 3}, 1, order)
    assert entries_tokens(example_db, res.entries) == [("f", 3), ("a", 3)]


count_tables = st.dictionaries(
    st.integers(0, 8), st.integers(1, 50), min_size=0, max_size=9
)


@given(count_tables, st.integers(1, 12))
def test_finalize_contract(counts, k):
    db = TransactionDatabase.from_token_rows([[f"i{j}" for j in range(9)]])
    order = db.rank_order
    res = finalize_topk(counts, k, order)
    included = dict(res.entries)
    assert set(included) <= set(counts)
    assert len(res.entries) >= min(k, len(counts))
    excluded = {i: c for i, c in counts.items() if i not in included}
    if included:
        cut = min(included.values())
        assert all(c < cut for c in excluded.values())
    values = [c for _, c in res.entries]
    assert values == sorted(values, reverse=True)
    for (i1, c1), (i2, c2) in zip(res.entries, res.entries[1:]):
        if c1 == c2:
            assert order.rank[i1] < order.rank[i2]
    again = finalize_topk(included, k, order)
    assert again == res
