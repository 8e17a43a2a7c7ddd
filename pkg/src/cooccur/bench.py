"""Benchmark harness: timed query runs, cross-engine agreement, scaling sweeps.

Timing uses the monotonic wall clock and never includes index construction;
tidset and tree builds happen (and are measured) before the first timed query.
Every query is answered by every selected engine and the answers must be
identical, entry for entry. A disagreement aborts the run with a reproducer,
because a benchmark over inconsistent engines measures nothing.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .dataset import SyntheticParams, generate_queries, generate_synthetic, load_fimi
from .model import Query, QueryStats, TopKResult, TransactionDatabase, canonicalize_query
from .naive import nt_query, nt_ta_query
from .prefixtree import PrefixTree, build_prefix_tree, pt_query, pt_ta_query
from .report import BenchRow, ScaleRow
from .tidset import TidSetIndex, build_tidsets, nti_query, nti_ta_query

ENGINE_NAMES = ("nt", "nt-ta", "nti", "nti-ta", "pt", "pt-ta")


class CrossEngineMismatch(AssertionError):
    """Two engines disagreed; carries everything needed to replay the query."""

    def __init__(
        self,
        source: str,
        query_tokens: tuple[str, ...],
        k: int,
        outputs: dict[str, tuple[tuple[str, int], ...]],
    ) -> None:
        self.source = source
        self.query_tokens = query_tokens
        self.k = k
        self.outputs = outputs
        lines = [f"engines disagree on db={source} query={','.join(query_tokens)} k={k}"]
        for name, entries in outputs.items():
            lines.append(f"  {name}: {entries}")
        super().__init__("\n".join(lines))


class EngineContext:
    """A database plus lazily built indexes, shared across engine calls."""

    def __init__(self, db: TransactionDatabase) -> None:
        self.db = db
        self._tidsets: TidSetIndex | None = None
        self._tree: PrefixTree | None = None
        self.tidset_build_ns: int | None = None
        self.tree_build_ns: int | None = None

    @property
    def tidsets(self) -> TidSetIndex:
        if self._tidsets is None:
            start = time.perf_counter_ns()
            self._tidsets = build_tidsets(self.db)
            self.tidset_build_ns = time.perf_counter_ns() - start
        return self._tidsets

    @property
    def tree(self) -> PrefixTree:
        if self._tree is None:
            start = time.perf_counter_ns()
            self._tree = build_prefix_tree(self.db)
            self.tree_build_ns = time.perf_counter_ns() - start
        return self._tree

    def prepare(self, engines: Sequence[str]) -> None:
        """Force every index the selected engines will need."""
        _ = self.db.rank_order
        if any(e in ("nti", "nti-ta") for e in engines):
            _ = self.tidsets
        if any(e in ("pt", "pt-ta") for e in engines):
            _ = self.tree

    def run(self, engine: str, q: Query) -> tuple[TopKResult, QueryStats]:
        if engine == "nt":
            return nt_query(self.db, q)
        if engine == "nt-ta":
            return nt_ta_query(self.db, q)
        if engine == "nti":
            return nti_query(self.db, self.tidsets, q)
        if engine == "nti-ta":
            return nti_ta_query(self.db, self.tidsets, q)
        if engine == "pt":
            return pt_query(self.tree, q)
        if engine == "pt-ta":
            return pt_ta_query(self.tree, q)
        raise ValueError(f"unknown engine: {engine!r}")


@dataclass(frozen=True)
class PreprocessingReport:
    """Index construction costs and shape statistics for one database."""

    transactions: int
    items: int
    density: float
    tidset_build_ns: int
    tidset_total_tids: int
    tree_build_ns: int
    tree_node_count: int


def run_preprocessing_bench(db: TransactionDatabase) -> PreprocessingReport:
    """Build both indexes, timing each, and report their sizes."""
    ctx = EngineContext(db)
    tidsets = ctx.tidsets
    tree = ctx.tree
    items = db.n_items
    return PreprocessingReport(
        transactions=db.n_transactions,
        items=items,
        density=db.n_transactions / items if items else 0.0,
        tidset_build_ns=ctx.tidset_build_ns or 0,
        tidset_total_tids=tidsets.total_tids(),
        tree_build_ns=ctx.tree_build_ns or 0,
        tree_node_count=tree.node_count(),
    )


@dataclass(frozen=True)
class BenchConfig:
    """One query-benchmark run.

    Exactly one of db_path / synthetic must be set. Workload seeds are derived
    from `seed` and the query length, so a config reruns bit-identically apart
    from the elapsed_ns column.
    """

    engines: tuple[str, ...]
    query_lengths: tuple[int, ...]
    queries_per_length: int
    k: int
    seed: int
    db_path: str | None = None
    synthetic: SyntheticParams | None = None
    warmup: int = 3

    def __post_init__(self) -> None:
        if not self.engines:
            raise ValueError("at least one engine is required")
        for name in self.engines:
            if name not in ENGINE_NAMES:
                raise ValueError(f"unknown engine: {name!r}")
        if not self.query_lengths:
            raise ValueError("at least one query length is required")
        if any(l < 1 for l in self.query_lengths):
            raise ValueError("query lengths must be >= 1")
        if self.queries_per_length < 1:
            raise ValueError("queries_per_length must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if (self.db_path is None) == (self.synthetic is None):
            raise ValueError("exactly one of db_path / synthetic must be given")


def derive_seed(seed: int, salt: int) -> int:
    """Stable per-workload seed derivation, kept simple on purpose."""
    return (seed * 1_000_003 + salt) & (2**63 - 1)


@dataclass(frozen=True)
class Aggregate:
    """Latency and work summary for one (engine, length) cell."""

    engine: str
    length: int
    mean_ns: float
    median_ns: float
    mean_work: float


@dataclass
class BenchResult:
    rows: list[BenchRow] = field(default_factory=list)
    aggregates: list[Aggregate] = field(default_factory=list)
    source: str = ""


def _load_config_db(config: BenchConfig) -> tuple[TransactionDatabase, str]:
    if config.db_path is not None:
        return load_fimi(config.db_path), config.db_path
    assert config.synthetic is not None
    return generate_synthetic(config.synthetic), f"synthetic:{config.synthetic}"


def run_query_bench(config: BenchConfig) -> BenchResult:
    """Time every (length, engine, query) cell and cross-check the answers."""
    db, source = _load_config_db(config)
    ctx = EngineContext(db)
    ctx.prepare(config.engines)
    result = BenchResult(source=source)
    for length in config.query_lengths:
        workload = generate_queries(
            db,
            length,
            config.queries_per_length,
            derive_seed(config.seed, length),
        )
        queries: list[tuple[tuple[str, ...], Query]] = []
        for tokens in workload.queries:
            q = canonicalize_query(tokens, db, db.rank_order, config.k)
            assert q is not None  # workload tokens come from the db
            queries.append((tokens, q))
        tok = db.dictionary.id_to_token
        per_query_outputs: list[dict[str, TopKResult]] = [dict() for _ in queries]
        for engine in config.engines:
            warm_q = queries[0][1]
            for _ in range(config.warmup):
                ctx.run(engine, warm_q)
            cell: list[BenchRow] = []
            for pos, (tokens, q) in enumerate(queries):
                start = time.perf_counter_ns()
                topk, stats = ctx.run(engine, q)
                elapsed = time.perf_counter_ns() - start
                per_query_outputs[pos][engine] = topk
                cell.append(
                    BenchRow(
                        engine=engine,
                        query_tokens=tokens,
                        k=config.k,
                        elapsed_ns=elapsed,
                        result=tuple((tok[i], c) for i, c in topk.entries),
                        visited=stats.work,
                    )
                )
            result.rows.extend(cell)
            result.aggregates.append(
                Aggregate(
                    engine=engine,
                    length=length,
                    mean_ns=statistics.fmean(r.elapsed_ns for r in cell),
                    median_ns=statistics.median(r.elapsed_ns for r in cell),
                    mean_work=statistics.fmean(r.visited for r in cell),
                )
            )
        for pos, outputs in enumerate(per_query_outputs):
            entries = {name: r.entries for name, r in outputs.items()}
            baseline = next(iter(entries.values()))
            if any(e != baseline for e in entries.values()):
                raise CrossEngineMismatch(
                    source,
                    queries[pos][0],
                    config.k,
                    {
                        name: tuple((tok[i], c) for i, c in e)
                        for name, e in entries.items()
                    },
                )
    return result


def run_scalability_sweep(
    base: SyntheticParams,
    multipliers: Sequence[int],
    length: int = 5,
    k: int = 10,
    queries: int = 20,
    engines: Sequence[str] = ("nti", "pt"),
    warmup: int = 3,
) -> list[ScaleRow]:
    """Mean query latency per engine as the transaction count is multiplied.

    Ratios are relative to the multiplier-1 database, which is measured first
    whether or not 1 appears in `multipliers` (when it does, its ratio is an
    exact 1.0 because the same measurement is reused).
    """
    for mult in multipliers:
        if mult < 1:
            raise ValueError("multipliers must be >= 1")
    if not multipliers:
        return []
    means: dict[int, dict[str, float]] = {}
    wanted = sorted(set(multipliers) | {1})
    for mult in wanted:
        config = BenchConfig(
            engines=tuple(engines),
            query_lengths=(length,),
            queries_per_length=queries,
            k=k,
            seed=derive_seed(base.seed, mult),
            synthetic=base.scaled(mult),
            warmup=warmup,
        )
        run = run_query_bench(config)
        means[mult] = {a.engine: a.mean_ns for a in run.aggregates}
    rows: list[ScaleRow] = []
    for mult in sorted(set(multipliers)):
        for engine in engines:
            rows.append(
                ScaleRow(
                    multiplier=mult,
                    engine=engine,
                    mean_elapsed_ns=means[mult][engine],
                    ratio=means[mult][engine] / means[1][engine],
                )
            )
    return rows
