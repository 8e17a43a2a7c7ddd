"""Prefix-tree query engines.

Transactions are sorted into rank order (most frequent item first) and inserted
into a counted prefix tree, so shared prefixes collapse into shared paths. A
header table keeps, per item, the list of tree nodes carrying that item's
label. Because ranks strictly increase along every root-to-leaf path, all the
transactions containing a query itemset are exactly those registered at nodes
of the query's rarest item whose root path covers the rest of the query; the
counts of items above such a node and of the nodes below it give the full
co-occurrence table without touching the database again.
"""

from __future__ import annotations

import heapq
from typing import Iterator

from .model import (
    Query,
    QueryStats,
    RankOrder,
    TopKResult,
    TransactionDatabase,
    finalize_topk,
)


class TreeNode:
    __slots__ = ("label", "count", "children", "parent")

    def __init__(self, label: int, parent: "TreeNode | None") -> None:
        self.label = label
        self.count = 0
        self.children: dict[int, TreeNode] = {}
        self.parent = parent

    def is_root(self) -> bool:
        return self.parent is None

    def __repr__(self) -> str:  # debugging aid only
        return f"TreeNode(label={self.label}, count={self.count})"


class PrefixTree:
    """Counted prefix tree plus per-item header lists in discovery order."""

    def __init__(self, root: TreeNode, header: dict[int, list[TreeNode]], order: RankOrder) -> None:
        self.root = root
        self.header = header
        self.order = order

    def nodes(self) -> Iterator[TreeNode]:
        """All non-root nodes, depth-first in child insertion order."""
        stack = list(reversed(list(self.root.children.values())))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children.values())))

    def node_count(self) -> int:
        return sum(1 for _ in self.nodes())

    def depth_histogram(self) -> dict[int, int]:
        """Node counts per depth; root children sit at depth 1."""
        hist: dict[int, int] = {}
        stack = [(child, 1) for child in self.root.children.values()]
        while stack:
            node, depth = stack.pop()
            hist[depth] = hist.get(depth, 0) + 1
            stack.extend((c, depth + 1) for c in node.children.values())
        return hist

    def validate(self, db: TransactionDatabase) -> None:
        """Structural invariants; raises AssertionError on any violation."""
        rank = self.order.rank
        header_sum = [0] * db.n_items
        root_child_sum = 0
        for child in self.root.children.values():
            root_child_sum += child.count
        assert root_child_sum == db.n_transactions, "root children do not cover the database"
        seen: set[int] = set()
        for node in self.nodes():
            assert id(node) not in seen, "node reachable twice"
            seen.add(id(node))
            header_sum[node.label] += node.count
            parent = node.parent
            assert parent is not None
            if not parent.is_root():
                assert rank[parent.label] < rank[node.label], "rank order broken on an edge"
            assert parent.children.get(node.label) is node, "parent link inconsistent"
            child_total = sum(c.count for c in node.children.values())
            assert node.count >= child_total, "child counts exceed the node count"
            assert node.count >= 1
        for ident in range(db.n_items):
            assert header_sum[ident] == db.support[ident], "header sums disagree with supports"
            linked = self.header.get(ident, [])
            assert len(linked) == len({id(n) for n in linked})
            for node in linked:
                assert node.label == ident
                assert id(node) in seen, "header links an unreachable node"
        total_linked = sum(len(v) for v in self.header.values())
        assert total_linked == len(seen), "header lists miss or duplicate nodes"


def build_prefix_tree(
    db: TransactionDatabase, order: RankOrder | None = None
) -> PrefixTree:
    """Insert every transaction, sorted by rank, into a counted prefix tree."""
    if order is None:
        order = db.rank_order
    rank = order.rank
    root = TreeNode(-1, None)
    # Header keys are laid down in rank order so iteration follows frequency.
    header: dict[int, list[TreeNode]] = {i: [] for i in order.order}
    for txn in db.transactions:
        node = root
        for item in sorted(txn, key=rank.__getitem__):
            child = node.children.get(item)
            if child is None:
                child = TreeNode(item, node)
                node.children[item] = child
                header[item].append(child)
            child.count += 1
            node = child
    return PrefixTree(root, header, order)


def find_desirable_nodes(tree: PrefixTree, q: Query) -> list[TreeNode]:
    """Nodes of the query's rarest item whose root path covers the query.

    Each transaction containing the query is registered at exactly one such
    node, so their counts partition the matching sub-database. The upward walk
    skips labels ranking between consecutive query items and gives up as soon
    as the current label outranks the item still being looked for, since every
    further ancestor outranks it too.
    """
    items = q.items  # rank-ascending
    rank = tree.order.rank
    anchors: list[TreeNode] = []
    for node in tree.header.get(items[-1], ()):
        x = len(items) - 2
        cur = node.parent
        while x >= 0:
            if cur is None or cur.is_root():
                x = -2  # ran out of ancestors with items unmatched
                break
            label = cur.label
            if label == items[x]:
                x -= 1
                cur = cur.parent
            elif rank[items[x]] < rank[label]:
                cur = cur.parent
            else:
                x = -2  # label outranks the wanted item: unreachable above
                break
        if x == -1:
            anchors.append(node)
    return anchors


def subtree_item_count(node: TreeNode, item: int) -> int:
    """Total count registered for `item` inside the subtree rooted at `node`.

    The subtree includes `node` itself. The result never exceeds node.count:
    same-label nodes sit on disjoint paths that all pass through `node`.
    """
    total = 0
    stack = [node]
    while stack:
        cur = stack.pop()
        if cur.label == item:
            total += cur.count
        stack.extend(cur.children.values())
    return total


def _collect_counts(
    tree: PrefixTree, q: Query, anchors: list[TreeNode]
) -> tuple[dict[int, int], int]:
    """Ancestor and subtree passes; returns (count table, nodes visited)."""
    pset = frozenset(q.items)
    counts: dict[int, int] = {}
    visited = 0
    for node in anchors:
        weight = node.count
        cur = node.parent
        while cur is not None and not cur.is_root():
            label = cur.label
            if label not in pset:
                counts[label] = counts.get(label, 0) + weight
            cur = cur.parent
        stack = list(reversed(list(node.children.values())))
        while stack:
            below = stack.pop()
            visited += 1
            counts[below.label] = counts.get(below.label, 0) + below.count
            stack.extend(reversed(list(below.children.values())))
    return counts, visited


def pt_co_counts(tree: PrefixTree, q: Query) -> dict[int, int]:
    """Full co-occurrence table computed from the tree alone."""
    counts, _ = _collect_counts(tree, q, find_desirable_nodes(tree, q))
    return counts


def pt_query(tree: PrefixTree, q: Query) -> tuple[TopKResult, QueryStats]:
    """Tree engine: one ancestor pass and one subtree pass per anchor node."""
    anchors = find_desirable_nodes(tree, q)
    counts, visited = _collect_counts(tree, q, anchors)
    result = finalize_topk(counts, q.k, tree.order)
    return result, QueryStats(work=len(anchors) + visited)


def _topk_partition(
    counts: dict[int, int], k: int
) -> tuple[set[int], int, int]:
    """Split seen items into (locked set, k-th best, best outsider count).

    The bar is 0 while fewer than k items have been seen, which keeps the
    termination test closed until a full candidate list exists.
    """
    if len(counts) < k:
        return set(counts), 0, 0
    bar = heapq.nlargest(k, counts.values())[-1]
    locked = {i for i, c in counts.items() if c >= bar}
    outside = [c for c in counts.values() if c < bar]
    return locked, bar, max(outside, default=0)


def pt_ta_query(
    tree: PrefixTree,
    q: Query,
    exact: bool = True,
    trace: list[dict[str, object]] | None = None,
) -> tuple[TopKResult, QueryStats]:
    """Two-phase tree engine with a per-subtree termination test.

    Phase one collects the ancestor-side counts, which are exact immediately
    because ancestor items never occur below an anchor. Phase two walks anchor
    subtrees one at a time; after each subtree, any item outside the running
    top-k can still gain at most the total count of the unprocessed anchors,
    so the scan of new candidates stops once even that cannot close the gap.
    Locked items are then counted to exactness over the remaining subtrees.
    """
    anchors = find_desirable_nodes(tree, q)
    pset = frozenset(q.items)
    counts: dict[int, int] = {}
    visited = 0
    for node in anchors:
        weight = node.count
        cur = node.parent
        while cur is not None and not cur.is_root():
            label = cur.label
            if label not in pset:
                counts[label] = counts.get(label, 0) + weight
            cur = cur.parent
    remaining = sum(node.count for node in anchors)
    stopped = False
    locked: set[int] = set()
    stop_after = 0
    for idx, node in enumerate(anchors):
        remaining -= node.count
        stack = list(reversed(list(node.children.values())))
        while stack:
            below = stack.pop()
            visited += 1
            counts[below.label] = counts.get(below.label, 0) + below.count
            stack.extend(reversed(list(below.children.values())))
        locked, bar, best_outside = _topk_partition(counts, q.k)
        if trace is not None:
            trace.append(
                {
                    "lower_bound": bar,
                    "best_outside": best_outside,
                    "remaining": remaining,
                    "counts": dict(counts),
                    "topk": frozenset(locked),
                }
            )
        if bar > best_outside + remaining:
            stopped = True
            stop_after = idx + 1
            break
    if not stopped:
        result = finalize_topk(counts, q.k, tree.order)
        return result, QueryStats(work=len(anchors) + visited)
    table = {i: counts[i] for i in locked}
    if exact:
        for node in anchors[stop_after:]:
            stack = list(reversed(list(node.children.values())))
            while stack:
                below = stack.pop()
                visited += 1
                if below.label in table:
                    table[below.label] += below.count
                stack.extend(reversed(list(below.children.values())))
    complete = exact or stop_after == len(anchors)
    result = finalize_topk(table, q.k, tree.order, exact_counts=complete)
    stats = QueryStats(
        work=len(anchors) + visited,
        early_stop=True,
        ta_stopped_after=stop_after,
        ta_topk_at_stop=frozenset(locked),
    )
    return result, stats
