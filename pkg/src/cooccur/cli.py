"""Command-line interface.

Subcommands: gen (synthesize a dataset), stats (database and index shape),
query (answer one query with a chosen engine), bench (timed multi-engine
comparison), scale (transaction-count scaling sweep), verify (cross-check all
engines against the brute-force reference). Every command that draws random
numbers takes an explicit --seed so its output is reproducible.
"""

from __future__ import annotations

import argparse
import sys
import time

from .bench import (
    ENGINE_NAMES,
    BenchConfig,
    CrossEngineMismatch,
    EngineContext,
    run_preprocessing_bench,
    run_query_bench,
    run_scalability_sweep,
)
from .dataset import SyntheticParams, generate_queries, generate_synthetic, load_fimi, write_fimi
from .model import canonicalize_query
from .oracle import oracle_topk
from .report import (
    _TSV_COLUMNS,
    BenchRow,
    emit_report,
    emit_scale_report,
    row_to_json,
    row_to_tsv,
)


def parse_lengths(text: str) -> tuple[int, ...]:
    """Accept "3..7" ranges and "3,4,7" lists (also a single number)."""
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        start, stop = int(lo), int(hi)
        if stop < start:
            raise argparse.ArgumentTypeError(f"empty range: {text!r}")
        return tuple(range(start, stop + 1))
    return tuple(int(part) for part in text.split(",") if part.strip())


def parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def parse_engines(text: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    for name in names:
        if name not in ENGINE_NAMES:
            raise argparse.ArgumentTypeError(f"unknown engine: {name!r}")
    return names


_PARAM_KEYS = {
    "trans": "n_transactions",
    "items": "n_items",
    "avg-len": "avg_trans_len",
    "patterns": "n_patterns",
    "pattern-len": "avg_pattern_len",
    "corr": "correlation",
}


def parse_synthetic(text: str) -> dict[str, float]:
    """Parse "trans=10000,items=100,avg-len=10,..." into generator kwargs."""
    kwargs: dict[str, float] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep or _PARAM_KEYS.get(key.strip()) is None:
            valid = ", ".join(sorted(_PARAM_KEYS))
            raise argparse.ArgumentTypeError(
                f"bad synthetic parameter {part!r} (valid keys: {valid})"
            )
        field_name = _PARAM_KEYS[key.strip()]
        number = float(value)
        if field_name in ("n_transactions", "n_items", "n_patterns"):
            kwargs[field_name] = int(number)
        else:
            kwargs[field_name] = number
    if "n_transactions" not in kwargs or "n_items" not in kwargs or "avg_trans_len" not in kwargs:
        raise argparse.ArgumentTypeError(
            "synthetic parameters need at least trans=, items=, avg-len="
        )
    return kwargs


def cmd_gen(args: argparse.Namespace) -> int:
    params = SyntheticParams(
        n_transactions=args.trans,
        n_items=args.items,
        avg_trans_len=args.avg_len,
        n_patterns=args.patterns,
        avg_pattern_len=args.pattern_len,
        correlation=args.corr,
        seed=args.seed,
    )
    db = generate_synthetic(params)
    write_fimi(db, args.output)
    total = sum(len(t) for t in db.transactions)
    print(
        f"wrote {db.n_transactions} transactions, {db.n_items} items, "
        f"avg length {total / db.n_transactions:.2f} -> {args.output}"
    )
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    db = load_fimi(args.db)
    report = run_preprocessing_bench(db)
    total = sum(len(t) for t in db.transactions)
    avg_len = total / db.n_transactions if db.n_transactions else 0.0
    print(f"transactions {report.transactions}")
    print(f"items {report.items}")
    print(f"avg_length {avg_len:.4f}")
    print(f"density {report.density:.4f}")
    print(f"tree_nodes {report.tree_node_count}")
    print(f"tidset_total_tids {report.tidset_total_tids}")
    print(f"tidset_build_ms {report.tidset_build_ns / 1e6:.3f}")
    print(f"tree_build_ms {report.tree_build_ns / 1e6:.3f}")
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    db = load_fimi(args.db)
    tokens = tuple(t.strip() for t in args.itemset.split(",") if t.strip())
    try:
        q = canonicalize_query(tokens, db, db.rank_order, args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    tok = db.dictionary.id_to_token
    if q is None:
        entries: tuple[tuple[str, int], ...] = ()
        visited = 0
        elapsed = 0
    elif args.engine == "oracle":
        start = time.perf_counter_ns()
        topk = oracle_topk(db, q)
        elapsed = time.perf_counter_ns() - start
        entries = tuple((tok[i], c) for i, c in topk.entries)
        visited = db.n_transactions
    else:
        ctx = EngineContext(db)
        ctx.prepare((args.engine,))
        start = time.perf_counter_ns()
        topk, stats = ctx.run(args.engine, q)
        elapsed = time.perf_counter_ns() - start
        entries = tuple((tok[i], c) for i, c in topk.entries)
        visited = stats.work
    row = BenchRow(
        engine=args.engine,
        query_tokens=tokens,
        k=args.k,
        elapsed_ns=elapsed,
        result=entries,
        visited=visited,
    )
    if args.format == "json":
        print(row_to_json(row))
    else:
        print("\t".join(_TSV_COLUMNS))
        print(row_to_tsv(row))
    return 0


def _bench_config(args: argparse.Namespace) -> BenchConfig:
    synthetic = None
    if args.synthetic is not None:
        synthetic = SyntheticParams(seed=args.seed, **args.synthetic)
    return BenchConfig(
        engines=args.engines,
        query_lengths=args.lengths,
        queries_per_length=args.queries,
        k=args.k,
        seed=args.seed,
        db_path=args.db,
        synthetic=synthetic,
    )


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        config = _bench_config(args)
        result = run_query_bench(config)
    except (ValueError, CrossEngineMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    emit_report(result.rows, args.output, args.format)
    print(f"wrote {len(result.rows)} rows -> {args.output}")
    print(f"{'engine':8} {'len':>3} {'mean ms':>10} {'median ms':>10} {'mean work':>12}")
    for agg in result.aggregates:
        print(
            f"{agg.engine:8} {agg.length:>3} {agg.mean_ns / 1e6:>10.3f} "
            f"{agg.median_ns / 1e6:>10.3f} {agg.mean_work:>12.1f}"
        )
    if args.figures:
        from .figures import save_bench_figures

        for path in save_bench_figures(result.aggregates, args.output):
            print(f"figure -> {path}")
    return 0


def cmd_scale(args: argparse.Namespace) -> int:
    base = SyntheticParams(seed=args.seed, **args.base)
    try:
        rows = run_scalability_sweep(
            base,
            args.mult,
            length=args.length,
            k=args.k,
            queries=args.queries,
            engines=args.engines,
        )
    except (ValueError, CrossEngineMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    emit_scale_report(rows, args.output, args.format)
    print(f"wrote {len(rows)} rows -> {args.output}")
    print(f"{'mult':>4} {'engine':8} {'mean ms':>10} {'ratio':>8}")
    for row in rows:
        print(
            f"{row.multiplier:>4} {row.engine:8} "
            f"{row.mean_elapsed_ns / 1e6:>10.3f} {row.ratio:>8.2f}"
        )
    if args.figures:
        from .figures import save_scale_figure

        print(f"figure -> {save_scale_figure(rows, args.output)}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    db = load_fimi(args.db)
    ctx = EngineContext(db)
    ctx.prepare(ENGINE_NAMES)
    mismatches = 0
    for length in args.lengths:
        try:
            workload = generate_queries(
                db, length, args.queries, (args.seed * 1_000_003 + length) & (2**63 - 1)
            )
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        bad = 0
        for tokens in workload.queries:
            q = canonicalize_query(tokens, db, db.rank_order, args.k)
            assert q is not None
            expected = oracle_topk(db, q).entries
            for engine in ENGINE_NAMES:
                got, _ = ctx.run(engine, q)
                if got.entries != expected:
                    bad += 1
                    mismatches += 1
                    print(
                        f"MISMATCH length={length} engine={engine} "
                        f"query={','.join(tokens)} k={args.k}: "
                        f"{got.entries} != {expected}",
                        file=sys.stderr,
                    )
        status = "ok" if bad == 0 else f"{bad} mismatches"
        print(f"length {length}: {args.queries} queries x {len(ENGINE_NAMES)} engines: {status}")
    if mismatches:
        print(f"FAILED: {mismatches} engine results diverged", file=sys.stderr)
        return 1
    print("all engines agree with the reference")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cooccur",
        description="Top-k co-occurrence query engines over transaction databases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic transaction dataset")
    gen.add_argument("--trans", type=int, required=True, help="number of transactions")
    gen.add_argument("--items", type=int, required=True, help="size of the item universe")
    gen.add_argument("--avg-len", type=float, required=True, help="mean transaction length")
    gen.add_argument("--patterns", type=int, default=10, help="pattern pool size")
    gen.add_argument("--pattern-len", type=float, default=4.0, help="mean pattern length")
    gen.add_argument("--corr", type=float, default=0.5, help="pattern item keep probability")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("-o", "--output", required=True, help="output dataset file")
    gen.set_defaults(func=cmd_gen)

    stats = sub.add_parser("stats", help="database and index shape statistics")
    stats.add_argument("--db", required=True, help="dataset file")
    stats.set_defaults(func=cmd_stats)

    query = sub.add_parser("query", help="answer a single query")
    query.add_argument("--db", required=True, help="dataset file")
    query.add_argument(
        "--engine", choices=ENGINE_NAMES + ("oracle",), default="pt"
    )
    query.add_argument("--itemset", required=True, help='comma-separated tokens, e.g. "a,c"')
    query.add_argument("-k", type=int, default=10)
    query.add_argument("--format", choices=("json", "tsv"), default="json")
    query.set_defaults(func=cmd_query)

    bench = sub.add_parser("bench", help="timed multi-engine comparison")
    src = bench.add_mutually_exclusive_group(required=True)
    src.add_argument("--db", help="dataset file")
    src.add_argument(
        "--synthetic",
        type=parse_synthetic,
        help='generator parameters, e.g. "trans=10000,items=100,avg-len=10,corr=0.9"',
    )
    bench.add_argument(
        "--engines", type=parse_engines, default=ENGINE_NAMES, help="comma-separated engine list"
    )
    bench.add_argument("--lengths", type=parse_lengths, default=(3, 4, 5, 6, 7))
    bench.add_argument("--queries", type=int, default=100, help="queries per length")
    bench.add_argument("-k", type=int, default=10)
    bench.add_argument("--seed", type=int, required=True)
    bench.add_argument("-o", "--output", required=True, help="report file")
    bench.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    bench.add_argument(
        "--no-figures", dest="figures", action="store_false", help="skip PNG rendering"
    )
    bench.set_defaults(func=cmd_bench)

    scale = sub.add_parser("scale", help="transaction-count scaling sweep")
    scale.add_argument("--base", type=parse_synthetic, required=True, help="base generator parameters")
    scale.add_argument("--mult", type=parse_int_list, default=(1, 2, 3, 4, 5))
    scale.add_argument("--length", type=int, default=5)
    scale.add_argument("-k", type=int, default=10)
    scale.add_argument("--queries", type=int, default=20)
    scale.add_argument("--engines", type=parse_engines, default=("nti", "pt"))
    scale.add_argument("--seed", type=int, required=True)
    scale.add_argument("-o", "--output", required=True, help="report file")
    scale.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    scale.add_argument(
        "--no-figures", dest="figures", action="store_false", help="skip PNG rendering"
    )
    scale.set_defaults(func=cmd_scale)

    verify = sub.add_parser("verify", help="cross-check every engine against the reference")
    verify.add_argument("--db", required=True, help="dataset file")
    verify.add_argument("--queries", type=int, default=50, help="queries per length")
    verify.add_argument("--lengths", type=parse_lengths, default=(1, 2, 3, 4, 5))
    verify.add_argument("-k", type=int, default=10)
    verify.add_argument("--seed", type=int, required=True)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
