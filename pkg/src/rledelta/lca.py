"""Constant-time LCP between any two run-boundary suffixes.

Euler tour + range-minimum over tour depths; the character-level LCP of two
boundary suffixes is the char depth of the lowest common ancestor of their
leaves.  The default RMQ is a sparse table (O(r log r) words); a linear-space
block decomposition with O(log r)-time queries is available behind a flag.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .rstree import RSuffixTree


def _log_table(m: int) -> np.ndarray:
    """lg[i] = floor(log2(i)) for i in [1..m]; lg[0] unused."""
    out = np.zeros(m + 1, dtype=np.int64)
    if m == 0:
        return out
    idx = np.arange(1, m + 1, dtype=np.int64)
    lg = np.floor(np.log2(idx)).astype(np.int64)
    lg[(np.int64(1) << lg) > idx] -= 1
    lg[(np.int64(2) << lg) <= idx] += 1
    out[1:] = lg
    return out


def _sparse_argmin(depth: np.ndarray) -> np.ndarray:
    m = len(depth)
    levels = max(1, int(m).bit_length())
    table = np.empty((levels, m), dtype=np.int32)
    table[0] = np.arange(m, dtype=np.int32)
    for j in range(1, levels):
        half = 1 << (j - 1)
        span = 1 << j
        table[j] = table[j - 1]
        valid = m - span + 1
        if valid > 0:
            a = table[j - 1, :valid]
            b = table[j - 1, half : half + valid]
            table[j, :valid] = np.where(depth[a] <= depth[b], a, b)
    return table


class LcaOracle:
    """LCA / boundary-suffix LCP queries over a finished RSuffixTree."""

    def __init__(self, tree: RSuffixTree, linear_rmq: bool = False):
        self.tree = tree
        euler_node, euler_depth, first_occ, tree_depth = _kernels._euler_tour(
            tree.child_start, tree.child_list
        )
        self.euler_node = euler_node
        self.euler_depth = euler_depth
        self.first_occ = first_occ
        self.tree_depth = tree_depth
        m = len(euler_depth)
        if linear_rmq:
            # block minima + sparse table over blocks; partial blocks scanned
            self.block_size = max(1, int(m).bit_length())
            nblocks = (m + self.block_size - 1) // self.block_size
            pad = nblocks * self.block_size - m
            padded = np.concatenate((euler_depth, np.full(pad, np.iinfo(np.int64).max)))
            blocks = padded.reshape(nblocks, self.block_size)
            block_arg = (
                np.argmin(blocks, axis=1)
                + np.arange(nblocks, dtype=np.int64) * self.block_size
            )
            levels = max(1, int(nblocks).bit_length())
            blk_sparse = np.empty((levels, nblocks), dtype=np.int32)
            blk_sparse[0] = block_arg
            for j in range(1, levels):
                half = 1 << (j - 1)
                span = 1 << j
                blk_sparse[j] = blk_sparse[j - 1]
                valid = nblocks - span + 1
                if valid > 0:
                    a = blk_sparse[j - 1, :valid]
                    b = blk_sparse[j - 1, half : half + valid]
                    blk_sparse[j, :valid] = np.where(
                        euler_depth[a] <= euler_depth[b], a, b
                    )
            self.blk_lg = _log_table(nblocks)
            self.blk_sparse = blk_sparse
            self.lg = np.zeros(1, dtype=np.int64)
            self.sparse = np.zeros((1, 1), dtype=np.int32)
        else:
            self.block_size = 0
            self.lg = _log_table(m)
            self.sparse = _sparse_argmin(euler_depth)
            self.blk_lg = np.zeros(1, dtype=np.int64)
            self.blk_sparse = np.zeros((1, 1), dtype=np.int32)

    def _argmin(self, lo: int, hi: int) -> int:
        return int(
            _kernels._rmq_argmin(
                lo,
                hi,
                self.euler_depth,
                self.lg,
                self.sparse,
                self.block_size,
                self.blk_lg,
                self.blk_sparse,
            )
        )

    def lca(self, u: int, v: int) -> int:
        pos = self._argmin(int(self.first_occ[u]), int(self.first_occ[v]))
        return int(self.euler_node[pos])

    def lcp_suffixes(self, leaf_a: int, leaf_b: int) -> int:
        """Character-level LCP of the boundary suffixes at two leaves."""
        tree = self.tree
        if not (tree.is_leaf[leaf_a] and tree.is_leaf[leaf_b]):
            raise ValueError("lcp_suffixes expects leaf node ids")
        return int(tree.char_depth[self.lca(leaf_a, leaf_b)])


def build_lca_oracle(tree: RSuffixTree, linear_rmq: bool = False) -> LcaOracle:
    return LcaOracle(tree, linear_rmq=linear_rmq)
