"""Hot inner loops, compiled with numba when available.

Every loop kernel below is written in nopython-compatible style.  At import
time the module either wraps them with ``numba.njit`` or leaves them as plain
Python, depending on the ``RLEDELTA_BACKEND`` environment variable:

* unset / ``auto``  -- use numba if importable, else pure numpy/Python
* ``numba``         -- require numba
* ``numpy``         -- force the pure numpy/Python fallback

The suffix array additionally has a vectorized numpy implementation used on
the fallback path, where an interpreted character loop would be too slow.
"""
from __future__ import annotations

import os

import numpy as np


# ---------------------------------------------------------------------------
# suffix array: prefix doubling
# ---------------------------------------------------------------------------

def _sa_doubling(s):
    """Suffix array of a non-negative int64 array, counting-sort doubling.

    Shorter suffixes sort before longer ones at prefix ties (the usual
    convention when a unique terminator is absent).
    """
    n = s.shape[0]
    sa = np.empty(n, np.int64)
    if n == 0:
        return sa
    rank = np.empty(n, np.int64)
    tmp = np.empty(n, np.int64)
    pn = np.empty(n, np.int64)

    maxv = np.int64(0)
    for i in range(n):
        if s[i] > maxv:
            maxv = s[i]
    k_alpha = maxv + 1
    cnt = np.zeros(k_alpha + 1, np.int64)
    for i in range(n):
        cnt[s[i] + 1] += 1
    for v in range(k_alpha):
        cnt[v + 1] += cnt[v]
    for i in range(n):
        sa[cnt[s[i]]] = i
        cnt[s[i]] += 1
    rank[sa[0]] = 0
    for i in range(1, n):
        step = 1 if s[sa[i]] != s[sa[i - 1]] else 0
        rank[sa[i]] = rank[sa[i - 1]] + step

    classes = rank[sa[n - 1]] + 1
    cnt2 = np.zeros(n + 1, np.int64)
    k = 1
    while classes < n and k < n:
        idx = 0
        for i in range(n - k, n):
            pn[idx] = i
            idx += 1
        for i in range(n):
            if sa[i] >= k:
                pn[idx] = sa[i] - k
                idx += 1
        for c in range(classes + 1):
            cnt2[c] = 0
        for i in range(n):
            cnt2[rank[i] + 1] += 1
        for c in range(classes):
            cnt2[c + 1] += cnt2[c]
        for i in range(n):
            c = rank[pn[i]]
            sa[cnt2[c]] = pn[i]
            cnt2[c] += 1
        tmp[sa[0]] = 0
        for i in range(1, n):
            a = sa[i - 1]
            b = sa[i]
            sa2 = rank[a + k] if a + k < n else -1
            sb2 = rank[b + k] if b + k < n else -1
            if rank[a] != rank[b] or sa2 != sb2:
                tmp[b] = tmp[a] + 1
            else:
                tmp[b] = tmp[a]
        for i in range(n):
            rank[i] = tmp[i]
        classes = rank[sa[n - 1]] + 1
        k <<= 1
    return sa


def _suffix_array_numpy(s):
    """Same contract as _sa_doubling, via lexsort (vectorized fallback)."""
    n = s.shape[0]
    if n == 0:
        return np.empty(0, np.int64)
    rank = np.unique(s, return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        changed = np.empty(n, np.int64)
        changed[0] = 0
        changed[1:] = (rank[order[1:]] != rank[order[:-1]]) | (
            second[order[1:]] != second[order[:-1]]
        )
        new_rank = np.empty(n, np.int64)
        new_rank[order] = np.cumsum(changed)
        rank = new_rank
        if rank[order[-1]] == n - 1:
            return order.astype(np.int64)
        k <<= 1


# ---------------------------------------------------------------------------
# LCP array (Kasai): lcp[i] = LCP(suffix sa[i-1], suffix sa[i]), lcp[0] = 0
# ---------------------------------------------------------------------------

def _kasai(s, sa):
    n = sa.shape[0]
    lcp = np.zeros(n, np.int64)
    rank = np.empty(n, np.int64)
    for i in range(n):
        rank[sa[i]] = i
    h = 0
    for i in range(n):
        if rank[i] > 0:
            j = sa[rank[i] - 1]
            while i + h < n and j + h < n and s[i + h] == s[j + h]:
                h += 1
            lcp[rank[i]] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


# ---------------------------------------------------------------------------
# LSD radix passes with counting buckets (stable)
# ---------------------------------------------------------------------------

def _radix_passes(keys, order0, bits):
    """Stable LSD radix sort of `keys` starting from permutation `order0`."""
    n = keys.shape[0]
    order = order0.copy()
    if n == 0:
        return order
    buf = np.empty(n, np.int64)
    mask = (np.int64(1) << bits) - 1
    maxk = np.int64(0)
    for i in range(n):
        if keys[i] > maxk:
            maxk = keys[i]
    cnt = np.empty(mask + 2, np.int64)
    shift = 0
    while True:
        for d in range(mask + 2):
            cnt[d] = 0
        for i in range(n):
            d = (keys[order[i]] >> shift) & mask
            cnt[d + 1] += 1
        for d in range(mask + 1):
            cnt[d + 1] += cnt[d]
        for i in range(n):
            d = (keys[order[i]] >> shift) & mask
            buf[cnt[d]] = order[i]
            cnt[d] += 1
        order, buf = buf, order
        shift += bits
        if (maxk >> shift) == 0:
            return order


def _radix_passes_numpy(keys, order, bits):
    mask = (1 << bits) - 1
    maxk = int(keys.max()) if keys.shape[0] else 0
    shift = 0
    while True:
        digit = (keys[order] >> shift) & mask
        order = order[np.argsort(digit, kind="stable")]
        shift += bits
        if (maxk >> shift) == 0:
            return order


# ---------------------------------------------------------------------------
# Euler tour of the tree (CSR children, root = node 0)
# ---------------------------------------------------------------------------

def _euler_tour(child_start, child_list):
    n_nodes = child_start.shape[0] - 1
    m = 2 * n_nodes - 1
    euler_node = np.empty(m, np.int64)
    euler_depth = np.empty(m, np.int64)
    first_occ = np.full(n_nodes, -1, np.int64)
    tree_depth = np.zeros(n_nodes, np.int64)
    stack_node = np.empty(n_nodes, np.int64)
    stack_ptr = np.empty(n_nodes, np.int64)
    top = 0
    stack_node[0] = 0
    stack_ptr[0] = child_start[0]
    euler_node[0] = 0
    euler_depth[0] = 0
    first_occ[0] = 0
    pos = 1
    while top >= 0:
        u = stack_node[top]
        p = stack_ptr[top]
        if p < child_start[u + 1]:
            v = child_list[p]
            stack_ptr[top] = p + 1
            top += 1
            stack_node[top] = v
            stack_ptr[top] = child_start[v]
            tree_depth[v] = top
            first_occ[v] = pos
            euler_node[pos] = v
            euler_depth[pos] = top
            pos += 1
        else:
            top -= 1
            if top >= 0:
                euler_node[pos] = stack_node[top]
                euler_depth[pos] = top
                pos += 1
    return euler_node, euler_depth, first_occ, tree_depth


# ---------------------------------------------------------------------------
# range-minimum argmin over the Euler depth array
# ---------------------------------------------------------------------------

def _rmq_argmin(lo, hi, euler_depth, lg, sparse, block_size, blk_lg, blk_sparse):
    """Index of the minimum depth in euler_depth[lo..hi] (inclusive).

    block_size == 0 selects the sparse-table layout; otherwise the
    linear-space block decomposition (partial blocks scanned).
    """
    if lo > hi:
        lo, hi = hi, lo
    if block_size == 0:
        j = lg[hi - lo + 1]
        x = np.int64(sparse[j, lo])
        y = np.int64(sparse[j, hi - (np.int64(1) << j) + 1])
        return x if euler_depth[x] <= euler_depth[y] else y
    ba = lo // block_size
    bb = hi // block_size
    best = lo
    if ba == bb:
        for i in range(lo + 1, hi + 1):
            if euler_depth[i] < euler_depth[best]:
                best = i
        return best
    end_a = (ba + 1) * block_size
    for i in range(lo + 1, end_a):
        if euler_depth[i] < euler_depth[best]:
            best = i
    for i in range(bb * block_size, hi + 1):
        if euler_depth[i] < euler_depth[best]:
            best = i
    fb = ba + 1
    lb = bb - 1
    if fb <= lb:
        j = blk_lg[lb - fb + 1]
        x = np.int64(blk_sparse[j, fb])
        y = np.int64(blk_sparse[j, lb - (np.int64(1) << j) + 1])
        cand = x if euler_depth[x] <= euler_depth[y] else y
        if euler_depth[cand] < euler_depth[best]:
            best = cand
    return best


# ---------------------------------------------------------------------------
# boundary depths |b(.)| for the leaves of one or more rem-ordered lists
# ---------------------------------------------------------------------------

def _b_depths_lists(
    seg_start,
    exp_pos,
    remfo_pos,
    proc_order,
    euler_node,
    euler_depth,
    char_depth,
    lg,
    sparse,
    block_size,
    blk_lg,
    blk_sparse,
):
    """Per-list sweep: process members in increasing first-run exponent order,
    take the nearest surviving neighbors with strictly larger exponent, and
    resolve every member in between with two LCP queries, then unlink it.

    Positions are concatenated per-symbol segments (CSR via seg_start) kept in
    rem-lexicographic order; proc_order is globally sorted by (segment,
    exponent, position).  Returns the boundary depth per position.
    """
    total = exp_pos.shape[0]
    prev = np.empty(total, np.int64)
    nxt = np.empty(total, np.int64)
    out = np.empty(total, np.int64)
    buf = np.empty(total, np.int64)
    nseg = seg_start.shape[0] - 1
    for seg in range(nseg):
        a = seg_start[seg]
        b = seg_start[seg + 1]
        for i in range(a, b):
            prev[i] = i - 1 if i > a else -1
            nxt[i] = i + 1 if i + 1 < b else -1
    done = np.zeros(total, np.bool_)
    for t in range(total):
        idx = proc_order[t]
        if done[idx]:
            continue
        e = exp_pos[idx]
        p = prev[idx]
        while p != -1 and exp_pos[p] <= e:
            p = prev[p]
        s = nxt[idx]
        while s != -1 and exp_pos[s] <= e:
            s = nxt[s]
        cnt = 0
        cur = idx
        while cur != p:
            buf[cnt] = cur
            cnt += 1
            cur = prev[cur]
        cur = nxt[idx]
        while cur != s:
            buf[cnt] = cur
            cnt += 1
            cur = nxt[cur]
        for q in range(cnt):
            member = buf[q]
            if p == -1 and s == -1:
                out[member] = e - 1
            else:
                best = np.int64(0)
                if p != -1:
                    a1 = remfo_pos[member]
                    b1 = remfo_pos[p]
                    m1 = _rmq_argmin(
                        a1, b1, euler_depth, lg, sparse, block_size, blk_lg, blk_sparse
                    )
                    v1 = char_depth[euler_node[m1]]
                    if v1 > best:
                        best = v1
                if s != -1:
                    a2 = remfo_pos[member]
                    b2 = remfo_pos[s]
                    m2 = _rmq_argmin(
                        a2, b2, euler_depth, lg, sparse, block_size, blk_lg, blk_sparse
                    )
                    v2 = char_depth[euler_node[m2]]
                    if v2 > best:
                        best = v2
                out[member] = e + best
            done[member] = True
            pm = prev[member]
            nm = nxt[member]
            if pm != -1:
                nxt[pm] = nm
            if nm != -1:
                prev[nm] = pm
    return out


# ---------------------------------------------------------------------------
# locate the diff-root edge position per leaf: the highest node x on the
# root-to-leaf path with char_depth[x] >= b_depth(leaf) + 1
# ---------------------------------------------------------------------------

def _locate_dmn_edges(child_start, child_list, char_depth, b_depth, target):
    n_nodes = child_start.shape[0] - 1
    out_edge = np.full(n_nodes, -1, np.int64)
    out_depth = np.full(n_nodes, -1, np.int64)
    stack_node = np.empty(n_nodes + 1, np.int64)
    stack_ptr = np.empty(n_nodes + 1, np.int64)
    path_depth = np.empty(n_nodes + 1, np.int64)
    top = 0
    stack_node[0] = 0
    stack_ptr[0] = child_start[0]
    path_depth[0] = 0
    while top >= 0:
        u = stack_node[top]
        p = stack_ptr[top]
        if p < child_start[u + 1]:
            v = child_list[p]
            stack_ptr[top] = p + 1
            top += 1
            stack_node[top] = v
            stack_ptr[top] = child_start[v]
            path_depth[top] = char_depth[v]
            if target[v] and b_depth[v] < char_depth[v]:
                want = b_depth[v] + 1
                loq = 0
                hiq = top
                while loq < hiq:
                    mid = (loq + hiq) >> 1
                    if path_depth[mid] >= want:
                        hiq = mid
                    else:
                        loq = mid + 1
                out_edge[v] = stack_node[loq]
                out_depth[v] = want
        else:
            top -= 1
    return out_edge, out_depth


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

_LOOP_KERNELS = (
    "_sa_doubling",
    "_kasai",
    "_radix_passes",
    "_euler_tour",
    "_rmq_argmin",
    "_b_depths_lists",
    "_locate_dmn_edges",
)

PY_IMPL = {name: globals()[name] for name in _LOOP_KERNELS}
PY_IMPL["_suffix_array_numpy"] = _suffix_array_numpy
PY_IMPL["_radix_passes_numpy"] = _radix_passes_numpy


def _choose_backend() -> str:
    env = os.environ.get("RLEDELTA_BACKEND", "auto").strip().lower()
    if env in ("", "auto"):
        try:
            import numba  # noqa: F401

            return "numba"
        except ImportError:
            return "numpy"
    if env == "numba":
        import numba  # noqa: F401  (raise loudly if unavailable)

        return "numba"
    if env == "numpy":
        return "numpy"
    raise ValueError(f"RLEDELTA_BACKEND={env!r}: expected 'numba', 'numpy' or 'auto'")


BACKEND = _choose_backend()
NB_IMPL: dict = {}

if BACKEND == "numba":
    from numba import njit

    # Rebind module globals so inter-kernel calls resolve to the compiled
    # versions (compilation is lazy, so order does not matter here).
    for _name in _LOOP_KERNELS:
        NB_IMPL[_name] = njit(cache=True)(PY_IMPL[_name])
    for _name in _LOOP_KERNELS:
        globals()[_name] = NB_IMPL[_name]


# ---------------------------------------------------------------------------
# public dispatch wrappers
# ---------------------------------------------------------------------------

def suffix_array(a: np.ndarray) -> np.ndarray:
    """Suffix array of a non-negative integer array (true suffix order)."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    if BACKEND == "numba":
        return _sa_doubling(a)
    return _suffix_array_numpy(a)


def lcp_array(a: np.ndarray, sa: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    sa = np.ascontiguousarray(sa, dtype=np.int64)
    return _kasai(a, sa)


def radix_order(keys: np.ndarray, bits: int) -> np.ndarray:
    """Stable ascending permutation of int64 keys via LSD radix passes."""
    keys = np.ascontiguousarray(keys, dtype=np.int64)
    order0 = np.arange(keys.shape[0], dtype=np.int64)
    if BACKEND == "numba":
        return _radix_passes(keys, order0, bits)
    return _radix_passes_numpy(keys, order0, bits)


def radix_order_pairs(hi: np.ndarray, lo: np.ndarray, bits: int) -> np.ndarray:
    """Stable permutation sorting composite (hi, lo) keys, low word first."""
    hi = np.ascontiguousarray(hi, dtype=np.int64)
    lo = np.ascontiguousarray(lo, dtype=np.int64)
    order0 = np.arange(hi.shape[0], dtype=np.int64)
    passes = _radix_passes if BACKEND == "numba" else _radix_passes_numpy
    order = passes(lo, order0, bits)
    return passes(hi, order, bits)


def kernel_impls() -> dict:
    """Implementations per backend name, for benchmarks and equivalence tests."""
    out = {"numpy": PY_IMPL}
    if NB_IMPL:
        out["numba"] = dict(NB_IMPL)
    return out
