"""Top-k co-occurrence query engines over transaction databases.

Given a transaction database and a query itemset, every engine here answers
the same question: which k items appear together with the whole query in the
most transactions (ties at the cut kept). Six engines trade preprocessing for
query speed; a brute-force oracle exists purely to check them.
"""

from .bench import (
    Aggregate,
    BenchConfig,
    BenchResult,
    CrossEngineMismatch,
    EngineContext,
    ENGINE_NAMES,
    PreprocessingReport,
    run_preprocessing_bench,
    run_query_bench,
    run_scalability_sweep,
)
from .dataset import (
    QueryWorkload,
    SyntheticParams,
    generate_queries,
    generate_synthetic,
    load_fimi,
    write_fimi,
)
from .model import (
    EMPTY_RESULT,
    ItemDictionary,
    Query,
    QueryStats,
    RankOrder,
    TopKResult,
    TransactionDatabase,
    build_rank_order,
    canonicalize_query,
    finalize_topk,
)
from .naive import TaState, nt_query, nt_ta_query
from .oracle import oracle_co_counts, oracle_topk
from .prefixtree import (
    PrefixTree,
    TreeNode,
    build_prefix_tree,
    find_desirable_nodes,
    pt_co_counts,
    pt_query,
    pt_ta_query,
    subtree_item_count,
)
from .report import BenchRow, ScaleRow, emit_report, emit_scale_report, read_report
from .tidset import TidSetIndex, build_tidsets, intersect, nti_query, nti_ta_query, project

__version__ = "0.1.0"

__all__ = [
    "Aggregate",
    "BenchConfig",
    "BenchResult",
    "BenchRow",
    "CrossEngineMismatch",
    "EMPTY_RESULT",
    "ENGINE_NAMES",
    "EngineContext",
    "ItemDictionary",
    "PrefixTree",
    "PreprocessingReport",
    "Query",
    "QueryStats",
    "QueryWorkload",
    "RankOrder",
    "ScaleRow",
    "SyntheticParams",
    "TaState",
    "TidSetIndex",
    "TopKResult",
    "TransactionDatabase",
    "TreeNode",
    "build_prefix_tree",
    "build_rank_order",
    "build_tidsets",
    "canonicalize_query",
    "emit_report",
    "emit_scale_report",
    "find_desirable_nodes",
    "finalize_topk",
    "generate_queries",
    "generate_synthetic",
    "intersect",
    "load_fimi",
    "nt_query",
    "nt_ta_query",
    "nti_query",
    "nti_ta_query",
    "oracle_co_counts",
    "oracle_topk",
    "project",
    "pt_co_counts",
    "pt_query",
    "pt_ta_query",
    "read_report",
    "run_preprocessing_bench",
    "run_query_bench",
    "run_scalability_sweep",
    "subtree_item_count",
    "write_fimi",
]
