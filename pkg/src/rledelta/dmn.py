"""Deepest-matching-node bookkeeping.

For every non-sentinel leaf l we compute the boundary depth |b(l)|: the depth
of the deepest node on l's root path that is dominated by a deeper node
matching the same tail.  One linked-list sweep per first-run symbol resolves
all leaves with two LCP queries each; leaves are processed in increasing
first-run exponent, and each round uses the nearest surviving neighbors with
strictly larger exponents (in rem lexicographic order).

From the boundary depths we derive the diff-roots (minimal nodes of the
deepest-matching set, one per edge, possibly mid-edge) and the explicit
member nodes with their (depth, shortest-match length, child count)
attributes, which the sweep module turns into events.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .lca import LcaOracle
from .rstree import RSuffixTree


@dataclass(frozen=True)
class RemLists:
    """Per-symbol lists of leaves in rem(.) lexicographic order (CSR)."""

    seg_start: np.ndarray  # int64[sigma + 1]
    members: np.ndarray  # int64[total] leaf node ids

    def list_for(self, symbol: int) -> np.ndarray:
        return self.members[self.seg_start[symbol] : self.seg_start[symbol + 1]]


@dataclass(frozen=True)
class DmnRoots:
    edge_node: np.ndarray  # nearest explicit descendant on the root's edge
    depth: np.ndarray  # d of the (possibly implicit) root node
    t_len: np.ndarray  # length of its shortest matched string


@dataclass(frozen=True)
class ExplicitDNodes:
    node: np.ndarray
    depth: np.ndarray
    t_len: np.ndarray
    child_count: np.ndarray  # real outgoing edges (sentinel excluded)


def build_rem_lists(tree: RSuffixTree) -> RemLists:
    """One pass over leaves in lex order; each leaf files its predecessor-run
    leaf under the predecessor run's symbol, so every list comes out sorted by
    rem(.) which equals the suffix one run boundary later."""
    sigma = tree.rle.sigma
    lex = tree.leaves_in_lex_order
    suffix = tree.suffix_index[lex]
    has_pred = suffix >= 1
    pred_run = suffix[has_pred] - 1
    members_scan = tree.leaf_of_suffix[pred_run]
    sym = tree.rle.symbols[pred_run]
    order = np.argsort(sym, kind="stable")
    members = members_scan[order].astype(np.int64)
    seg_start = np.zeros(sigma + 1, dtype=np.int64)
    np.cumsum(np.bincount(sym, minlength=sigma), out=seg_start[1:])
    return RemLists(seg_start, members)


def compute_b_depths(
    tree: RSuffixTree, oracle: LcaOracle, lists: RemLists
) -> np.ndarray:
    """Boundary depth |b(l)| per node (leaves only; -1 elsewhere).

    When a leaf has no list neighbor with a larger first-run exponent on
    either side, its boundary depth is e - 1: without a strictly longer run
    of the same character even the node one character short of the full first
    run is undominated.
    """
    members = lists.members
    total = len(members)
    b_depth = np.full(tree.n_nodes, -1, dtype=np.int64)
    if total == 0:
        return b_depth
    exp_pos = tree.first_exp[members]
    rem_leaf = tree.leaf_of_suffix[tree.suffix_index[members] + 1]
    remfo_pos = oracle.first_occ[rem_leaf]
    counts = np.diff(lists.seg_start)
    seg_of_pos = np.repeat(np.arange(len(counts), dtype=np.int64), counts)
    proc_order = np.lexsort(
        (np.arange(total, dtype=np.int64), exp_pos, seg_of_pos)
    ).astype(np.int64)
    out = _kernels._b_depths_lists(
        lists.seg_start,
        exp_pos,
        remfo_pos,
        proc_order,
        oracle.euler_node,
        oracle.euler_depth,
        tree.char_depth,
        oracle.lg,
        oracle.sparse,
        oracle.block_size,
        oracle.blk_lg,
        oracle.blk_sparse,
    )
    b_depth[members] = out
    return b_depth


def _target_leaves(tree: RSuffixTree) -> np.ndarray:
    return tree.is_leaf & (tree.suffix_index != tree.rle.r)


def collect_dmn_roots(tree: RSuffixTree, b_depth: np.ndarray) -> DmnRoots:
    """One diff-root per leaf with |b(l)| < d(l), at depth |b(l)| + 1 on its
    path; deduplicated by the edge (equivalently, by its explicit lower
    endpoint, since an edge carries at most one root)."""
    target = _target_leaves(tree)
    out_edge, out_depth = _kernels._locate_dmn_edges(
        tree.child_start, tree.child_list, tree.char_depth, b_depth, target
    )
    leaves = np.flatnonzero(out_edge >= 0)
    if len(leaves) == 0:
        empty = np.empty(0, dtype=np.int64)
        return DmnRoots(empty, empty, empty)
    edges = out_edge[leaves]
    depths = out_depth[leaves]
    t_len = np.maximum(1, depths - tree.first_exp[leaves] + 1)
    _, first_idx = np.unique(edges, return_index=True)
    return DmnRoots(edges[first_idx], depths[first_idx], t_len[first_idx])


def collect_explicit_d_nodes(
    tree: RSuffixTree, b_depth: np.ndarray
) -> ExplicitDNodes:
    """Every stored node strictly deeper than its path's boundary depth.

    Membership is leaf-independent, so one representative leaf per subtree
    suffices.  Leaves whose incoming edge is the bare sentinel spell the same
    string as their parent and are skipped; child counts exclude sentinel
    edges, so nodes kept only by a sentinel branch emit weightless events.
    """
    n_nodes = tree.n_nodes
    rep_bd = np.where(_target_leaves(tree), b_depth, -1)
    parent = tree.parent
    for v in range(n_nodes - 1, 0, -1):
        if rep_bd[v] >= 0 and rep_bd[parent[v]] < 0:
            rep_bd[parent[v]] = rep_bd[v]
    parent_depth = tree.char_depth[np.maximum(parent, 0)]
    sentinel_dup = tree.is_leaf & (tree.char_depth == parent_depth)
    candidate = np.ones(n_nodes, dtype=bool)
    candidate[0] = False
    candidate &= ~sentinel_dup
    members = np.flatnonzero(candidate & (tree.char_depth > rep_bd))
    depth = tree.char_depth[members]
    t_len = depth - tree.first_exp[members] + 1
    return ExplicitDNodes(members, depth, t_len, tree.real_child_count[members])


def leaf_debug_records(tree: RSuffixTree, b_depth: np.ndarray):
    """(run index, 1-based boundary position, first-run exponent, |b(l)|)."""
    rows = []
    for leaf in tree.leaves_in_lex_order.tolist():
        j = int(tree.suffix_index[leaf])
        if j == tree.rle.r:
            continue
        rows.append(
            (
                j,
                int(tree.rle.boundaries[j]),
                int(tree.first_exp[leaf]),
                int(b_depth[leaf]),
            )
        )
    rows.sort()
    return rows
