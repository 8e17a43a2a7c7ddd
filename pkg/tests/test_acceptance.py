"""Acceptance suite: one verdict line per criterion.

Each test prints exactly one `criterion N (...): PASS|FAIL` line; run with
`pytest tests/test_acceptance.py -s` to see them as they complete. The slow
entries are the dense-database trend checks (7 and 8), which generate six
databases of 100K transactions and up.
"""

from __future__ import annotations

import json
import random
from contextlib import contextmanager

from cooccur.bench import BenchConfig, run_query_bench, run_scalability_sweep
from cooccur.cli import main
from cooccur.dataset import SyntheticParams
from cooccur.model import Query, TransactionDatabase
from cooccur.naive import contains_sorted, nt_query, nt_ta_query
from cooccur.oracle import oracle_co_counts, oracle_topk
from cooccur.prefixtree import build_prefix_tree, pt_co_counts, pt_query, pt_ta_query
from cooccur.tidset import build_tidsets, nti_query, nti_ta_query

from conftest import (
    entries_tokens,
    make_query,
    random_any_query,
    random_contained_query,
    random_db,
)

# Dense, highly correlated database for the directional trend checks.
DENSE = SyntheticParams(
    n_transactions=100_000,
    n_items=120,
    avg_trans_len=24.0,
    n_patterns=6,
    avg_pattern_len=12.0,
    correlation=0.98,
    seed=77,
)


@contextmanager
def verdict(num: int, label: str):
    try:
        yield
    except BaseException:
        print(f"criterion {num} ({label}): FAIL")
        raise
    print(f"criterion {num} ({label}): PASS")


def all_engine_results(db, q):
    idx = build_tidsets(db)
    tree = build_prefix_tree(db)
    return {
        "nt": nt_query(db, q)[0],
        "nt-ta": nt_ta_query(db, q)[0],
        "nti": nti_query(db, idx, q)[0],
        "nti-ta": nti_ta_query(db, idx, q)[0],
        "pt": pt_query(tree, q)[0],
        "pt-ta": pt_ta_query(tree, q)[0],
    }


def test_criterion_1_worked_example_goldens(example_db):
    with verdict(1, "worked-example goldens"):
        results = all_engine_results(example_db, make_query(example_db, "ac", 2))
        results["oracle"] = oracle_topk(example_db, make_query(example_db, "ac", 2))
        for name, res in results.items():
            got = set(entries_tokens(example_db, res.entries))
            assert got == {("f", 3), ("d", 2)}, (name, got)
        results = all_engine_results(example_db, make_query(example_db, "c", 2))
        results["oracle"] = oracle_topk(example_db, make_query(example_db, "c", 2))
        for name, res in results.items():
            got = set(entries_tokens(example_db, res.entries))
            assert got == {("a", 3), ("f", 3)}, (name, got)
        tok = example_db.dictionary.id_to_token
        assert [tok[i] for i in example_db.rank_order.order] == list("cfabdeg")
        tree = build_prefix_tree(example_db)
        assert tree.node_count() == 11
        roots = {tok[c.label]: c.count for c in tree.root.children.values()}
        assert roots == {"c": 4, "f": 1}


def test_criterion_2_engines_match_reference():
    with verdict(2, "six engines match the reference on 1000 random cases"):
        rng = random.Random(20260818)
        for _ in range(1000):
            n = rng.randint(1, 300)
            m = rng.randint(2, 25)
            items = [f"i{j}" for j in range(m)]
            fill = rng.uniform(0.15, 0.9)
            rows = []
            for _ in range(n):
                size = max(1, min(m, round(rng.gauss(fill * m, 1.5))))
                rows.append(rng.sample(items, size))
            db = TransactionDatabase.from_token_rows(rows)
            if rng.random() < 0.7:
                txn = rng.choice([t for t in db.transactions if t])
                length = rng.randint(1, min(6, len(txn)))
                picked = rng.sample(list(txn), length)
            else:
                length = rng.randint(1, min(6, db.n_items))
                picked = rng.sample(range(db.n_items), length)
            k = rng.randint(1, db.n_items)
            q = Query(db.rank_order.sort_items(picked), k)
            expected = oracle_topk(db, q)
            for name, res in all_engine_results(db, q).items():
                assert res == expected, (name, q, res, expected)


def test_criterion_3_full_tables_match_reference():
    with verdict(3, "tree engine co-count tables match the reference"):
        rng = random.Random(3003)
        for _ in range(200):
            db = random_db(rng)
            q = (
                random_contained_query(rng, db)
                if rng.random() < 0.7
                else random_any_query(rng, db)
            )
            if q is None:
                continue
            tree = build_prefix_tree(db)
            assert pt_co_counts(tree, q) == oracle_co_counts(db, q)


def test_criterion_4_early_termination_is_safe():
    with verdict(4, "early termination never locks a beatable set"):
        rng = random.Random(4004)
        early_stops = 0
        for _ in range(400):
            db = random_db(rng, skewed=rng.random() < 0.6)
            q = random_contained_query(rng, db, max_len=3)
            if q is None:
                continue
            idx = build_tidsets(db)
            tree = build_prefix_tree(db)
            runs = (
                nt_ta_query(db, q),
                nti_ta_query(db, idx, q),
                pt_ta_query(tree, q),
            )
            final = None
            for _, stats in runs:
                if not stats.early_stop or stats.ta_topk_at_stop is None:
                    continue
                early_stops += 1
                locked = stats.ta_topk_at_stop
                assert locked
                if final is None:
                    final = oracle_co_counts(db, q)
                locked_min = min(final[i] for i in locked)
                for item, count in final.items():
                    if item not in locked:
                        assert count < locked_min, (locked, item, count)
        assert early_stops >= 25  # the check must actually exercise stops


def test_criterion_5_support_additivity():
    with verdict(5, "containment counts add across database splits"):
        rng = random.Random(5005)
        for _ in range(500):
            db = random_db(rng)
            q = random_any_query(rng, db, max_len=4)
            wanted = tuple(sorted(q.items))
            cut = rng.randint(0, db.n_transactions)
            whole = sum(1 for t in db.transactions if contains_sorted(t, wanted))
            split = sum(
                1 for t in db.transactions[:cut] if contains_sorted(t, wanted)
            ) + sum(1 for t in db.transactions[cut:] if contains_sorted(t, wanted))
            assert whole == split


def test_criterion_6_tree_structural_invariants(example_db):
    with verdict(6, "tree structural invariants hold everywhere"):
        build_prefix_tree(example_db).validate(example_db)
        edge_dbs = [
            TransactionDatabase.from_token_rows([]),
            TransactionDatabase.from_token_rows([["a"]]),
            TransactionDatabase.from_token_rows([["a", "b", "c"]] * 10),
        ]
        for db in edge_dbs:
            build_prefix_tree(db).validate(db)
        rng = random.Random(6006)
        for _ in range(150):
            db = random_db(rng, skewed=rng.random() < 0.3)
            build_prefix_tree(db).validate(db)


def test_criterion_7_dense_performance_trends():
    with verdict(7, "tree engine beats inverted lists beats full scans"):
        config = BenchConfig(
            engines=("nt", "nti", "pt"),
            query_lengths=(5,),
            queries_per_length=8,
            k=10,
            seed=101,
            synthetic=DENSE,
            warmup=2,
        )
        result = run_query_bench(config)
        means = {a.engine: a.mean_ns for a in result.aggregates}
        works = {a.engine: a.mean_work for a in result.aggregates}
        assert means["pt"] < means["nti"] < means["nt"], means
        assert works["pt"] < works["nti"], works
        assert means["nti"] >= 2 * means["pt"], means


def test_criterion_8_scalability_direction():
    with verdict(8, "tree engine latency grows no faster than inverted lists"):
        rows = run_scalability_sweep(
            DENSE,
            (1, 2, 3, 4),
            length=5,
            k=10,
            queries=6,
            engines=("nti", "pt"),
            warmup=2,
        )
        at4 = {r.engine: r.ratio for r in rows if r.multiplier == 4}
        assert at4["pt"] <= at4["nti"], at4


def test_criterion_9_deterministic_outputs(tmp_path, capsys):
    with verdict(9, "seeded runs reproduce bit-identical outputs"):
        gen_args = [
            "gen", "--trans", "500", "--items", "30", "--avg-len", "7",
            "--patterns", "5", "--pattern-len", "3", "--corr", "0.8",
            "--seed", "99",
        ]
        a, b = str(tmp_path / "a.dat"), str(tmp_path / "b.dat")
        assert main([*gen_args, "-o", a]) == 0
        assert main([*gen_args, "-o", b]) == 0
        assert open(a, "rb").read() == open(b, "rb").read()

        bench_args = [
            "bench", "--synthetic", "trans=2000,items=40,avg-len=8",
            "--engines", "nt,nti,pt", "--lengths", "3,4", "--queries", "10",
            "-k", "5", "--seed", "33", "--no-figures",
        ]
        r1, r2 = str(tmp_path / "r1.jsonl"), str(tmp_path / "r2.jsonl")
        assert main([*bench_args, "-o", r1]) == 0
        assert main([*bench_args, "-o", r2]) == 0
        capsys.readouterr()  # the bench tables are not part of the contract

        def rows_sans_timing(path):
            out = []
            for line in open(path, encoding="utf-8"):
                row = json.loads(line)
                row["elapsed_ns"] = 0
                out.append(row)
            return out

        assert rows_sans_timing(r1) == rows_sans_timing(r2)
