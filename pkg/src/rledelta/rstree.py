"""r-suffix tree: the compacted trie of the suffixes of T that start at run
boundaries, built in O(r log r) from the run-length encoding alone.

Construction: replace each run by a meta-character ranked by (symbol,
exponent), append a sentinel rank 0, build the suffix tree of that meta
string from its suffix array + LCP array with the usual stack method, then
normalize run prefixes: sibling edges whose first runs share a symbol but
differ in exponent are merged into chains of nodes at the cumulative
character depths.  Children are finally reordered by first character so a
DFS enumerates leaves in true character-lexicographic order (meta-rank order
disagrees with character order when a shorter run is followed by a larger
symbol).

Edge labels are never expanded; each node stores a reference (suffix run
index, run index, partial head exponent) into the RleString.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, intsort
from .errors import InternalInvariantViolation
from .rle import RleString


@dataclass(frozen=True)
class MetaString:
    """Runs of T replaced by ranks in [1..#distinct runs], sentinel 0 appended.

    Rank order is lexicographic by (symbol rank, exponent); equal runs share
    one rank.
    """

    w: np.ndarray  # int64[r + 1], trailing 0 sentinel
    rank_sym: np.ndarray  # int64[K + 1]; rank_sym[0] = -1 (sentinel)
    rank_exp: np.ndarray  # int64[K + 1]; rank_exp[0] = 0

    @property
    def num_ranks(self) -> int:
        return len(self.rank_sym) - 1


def build_meta_string(rle: RleString) -> MetaString:
    r = rle.r
    if r == 0:
        raise ValueError("meta string requires at least one run")
    order = intsort.sort_by_key((rle.symbols, rle.exponents), "radix")
    w = np.zeros(r + 1, dtype=np.int64)
    rank_sym = [-1]
    rank_exp = [0]
    rank = 0
    prev_s = prev_e = -1
    for idx in order.tolist():
        s = int(rle.symbols[idx])
        e = int(rle.exponents[idx])
        if s != prev_s or e != prev_e:
            rank += 1
            rank_sym.append(s)
            rank_exp.append(e)
            prev_s, prev_e = s, e
        w[idx] = rank
    return MetaString(
        w, np.array(rank_sym, dtype=np.int64), np.array(rank_exp, dtype=np.int64)
    )


@dataclass(frozen=True)
class RSuffixTree:
    """Normalized r-suffix tree in struct-of-arrays form; node 0 is the root.

    char_depth counts real characters only (the sentinel contributes 0), so a
    leaf's char_depth equals the length of its boundary suffix.  The leaf for
    the empty suffix (suffix_index == r) is the "sentinel-only" leaf; all
    downstream consumers skip it.
    """

    rle: RleString
    parent: np.ndarray  # int64[N]; -1 for the root
    char_depth: np.ndarray  # int64[N]
    first_sym: np.ndarray  # int64[N]; symbol rank of the first run of str(v)
    first_exp: np.ndarray  # int64[N]; exponent of that (possibly clipped) run
    suffix_index: np.ndarray  # int64[N]; run index for leaves, -1 otherwise
    is_leaf: np.ndarray  # bool[N]
    is_chain: np.ndarray  # bool[N]; nodes created by run-prefix normalization
    child_start: np.ndarray  # int64[N + 1] CSR, children ordered by first char
    child_list: np.ndarray  # int64[total children]
    real_child_count: np.ndarray  # int64[N]; outgoing edges excluding sentinel
    anchor_suffix: np.ndarray  # int64[N]; a suffix whose path passes the node
    anchor_run: np.ndarray  # int64[N]; run index where the incoming edge starts
    head_rem: np.ndarray  # int64[N]; chars left of that run on the edge
    leaves_in_lex_order: np.ndarray  # int64[r + 1]
    leaf_of_suffix: np.ndarray  # int64[r + 1]

    @property
    def n_nodes(self) -> int:
        return len(self.parent)

    def children(self, v: int) -> np.ndarray:
        return self.child_list[self.child_start[v] : self.child_start[v + 1]]

    def sentinel_leaf(self) -> int:
        return int(self.leaf_of_suffix[self.rle.r])


class _MetaTree:
    """Mutable intermediate: suffix tree of the meta string, then surgery."""

    __slots__ = (
        "parent",
        "children",
        "md",
        "rep",
        "is_leaf",
        "is_chain",
        "cd",
        "dead",
        "root",
    )

    def __init__(self):
        self.parent = [-1]
        self.children = [[]]
        self.md = [0]
        self.rep = [-1]
        self.is_leaf = [False]
        self.is_chain = [False]
        self.cd = [0]
        self.dead = [False]
        self.root = 0

    def new_node(self, md, rep, leaf, chain=False):
        self.parent.append(-1)
        self.children.append([])
        self.md.append(md)
        self.rep.append(rep)
        self.is_leaf.append(leaf)
        self.is_chain.append(chain)
        self.cd.append(0)
        self.dead.append(False)
        return len(self.parent) - 1


def _build_meta_tree(w: np.ndarray, sa: np.ndarray, lcp: np.ndarray) -> _MetaTree:
    """Stack construction of the compacted trie of all suffixes of w."""
    m = len(w)
    mt = _MetaTree()
    mt.rep[0] = int(sa[0])
    stack = [0]
    first = mt.new_node(m - int(sa[0]), int(sa[0]), True)
    mt.parent[first] = 0
    mt.children[0].append(first)
    stack.append(first)
    for i in range(1, m):
        lc = int(lcp[i])
        v = -1
        while mt.md[stack[-1]] > lc:
            v = stack.pop()
        u = stack[-1]
        if mt.md[u] < lc:
            if v == -1 or mt.children[u][-1] != v:
                raise InternalInvariantViolation("meta tree stack out of sync")
            x = mt.new_node(lc, mt.rep[v], False)
            mt.children[u][-1] = x
            mt.parent[x] = u
            mt.children[x].append(v)
            mt.parent[v] = x
            u = x
            stack.append(x)
        leaf = mt.new_node(m - int(sa[i]), int(sa[i]), True)
        mt.parent[leaf] = u
        mt.children[u].append(leaf)
        stack.append(leaf)
    return mt


def normalize_run_prefixes(mt: _MetaTree, ms: MetaString) -> None:
    """Merge sibling edges whose first runs share a symbol (Lemma-8 fixup).

    Works bottom-up (decreasing meta depth) so the head meta of every child
    inspected is still readable as w[rep(child) + md(parent)].  Nodes whose
    children collapse into a single chain are spliced out; the root is exempt.
    """
    w = ms.w
    rank_sym = ms.rank_sym
    rank_exp = ms.rank_exp
    snapshot = [
        v for v in range(len(mt.parent)) if not mt.is_leaf[v] and not mt.is_chain[v]
    ]
    snapshot.sort(key=lambda v: -mt.md[v])
    for u in snapshot:
        if mt.dead[u]:
            continue
        kids = mt.children[u]
        groups: dict = {}
        for c in kids:
            meta = int(w[mt.rep[c] + mt.md[u]])
            if meta == 0:
                continue  # sentinel edge, its own terminal branch
            groups.setdefault(int(rank_sym[meta]), []).append((c, int(rank_exp[meta])))
        merged_members = set()
        heads = []
        for sym, members in groups.items():
            if len(members) < 2:
                continue
            members.sort(key=lambda ce: ce[1])
            for (_, e1), (_, e2) in zip(members, members[1:]):
                if e1 == e2:
                    raise InternalInvariantViolation(
                        "sibling edges share a full (symbol, exponent) first run"
                    )
            attach = u
            for i in range(len(members) - 1):
                c, e = members[i]
                full = (mt.cd[c] - mt.cd[u] == e) and not mt.is_leaf[c]
                if full:
                    node_i = c
                    mt.parent[c] = attach
                    if attach != u:
                        mt.children[attach].append(c)
                else:
                    x = mt.new_node(-1, mt.rep[c], False, chain=True)
                    mt.cd[x] = mt.cd[u] + e
                    mt.parent[x] = attach
                    if attach != u:
                        mt.children[attach].append(x)
                    mt.children[x].append(c)
                    mt.parent[c] = x
                    node_i = x
                if attach == u:
                    heads.append(node_i)
                attach = node_i
            last, _ = members[-1]
            mt.parent[last] = attach
            mt.children[attach].append(last)
            merged_members.update(c for c, _ in members)
        if merged_members:
            mt.children[u] = [c for c in kids if c not in merged_members] + heads
        if u != mt.root and len(mt.children[u]) == 1:
            only = mt.children[u][0]
            par = mt.parent[u]
            mt.children[par][mt.children[par].index(u)] = only
            mt.parent[only] = par
            mt.dead[u] = True


def _char_depths(mt: _MetaTree, cbx: np.ndarray) -> None:
    for v in range(len(mt.parent)):
        if mt.is_chain[v] or mt.dead[v]:
            continue  # chain nodes got cd at creation
        rep = mt.rep[v]
        mt.cd[v] = int(cbx[rep + mt.md[v]] - cbx[rep])


def build_rsuffix_tree(rle: RleString) -> RSuffixTree:
    """Full pipeline: meta string -> suffix tree -> normalization -> metadata."""
    r = rle.r
    if r < 1:
        raise ValueError("r-suffix tree requires at least one run")
    ms = build_meta_string(rle)
    sa = _kernels.suffix_array(ms.w)
    lcp = _kernels.lcp_array(ms.w, sa)

    # chars strictly before run j; positions r and r+1 both map to n so leaf
    # meta-depths (which count the sentinel) index uniformly
    cbx = np.zeros(r + 2, dtype=np.int64)
    np.cumsum(rle.exponents, out=cbx[1 : r + 1])
    cbx[r + 1] = cbx[r]

    mt = _build_meta_tree(ms.w, sa, lcp)
    _char_depths(mt, cbx)
    normalize_run_prefixes(mt, ms)
    return _finalize(mt, rle, cbx)


def _finalize(mt: _MetaTree, rle: RleString, cbx: np.ndarray) -> RSuffixTree:
    r = rle.r
    cb = cbx[: r + 1]
    symbols = rle.symbols

    def edge_key(par: int, c: int) -> int:
        if mt.cd[c] == mt.cd[par]:
            return -1  # sentinel edge
        q = int(cb[mt.rep[c]]) + mt.cd[par]
        run = int(np.searchsorted(cb, q, side="right")) - 1
        return int(symbols[run])

    order_children = mt.children
    for v in range(len(mt.parent)):
        if mt.dead[v] or not order_children[v]:
            continue
        keys = [edge_key(v, c) for c in order_children[v]]
        if len(set(keys)) != len(keys):
            raise InternalInvariantViolation("sibling edges share a first character")
        order_children[v] = [c for _, c in sorted(zip(keys, order_children[v]))]

    # DFS renumber (preorder); leaves come out in character-lex order
    total_live = sum(1 for d in mt.dead if not d)
    new_id = {mt.root: 0}
    parent = np.full(total_live, -1, dtype=np.int64)
    char_depth = np.zeros(total_live, dtype=np.int64)
    suffix_index = np.full(total_live, -1, dtype=np.int64)
    is_leaf = np.zeros(total_live, dtype=bool)
    is_chain = np.zeros(total_live, dtype=bool)
    anchor_suffix = np.full(total_live, -1, dtype=np.int64)
    counts = np.zeros(total_live, dtype=np.int64)
    children_new: list = [None] * total_live
    stack = [mt.root]
    while stack:
        old = stack.pop()
        nid = new_id[old]
        char_depth[nid] = mt.cd[old]
        is_leaf[nid] = mt.is_leaf[old]
        is_chain[nid] = mt.is_chain[old]
        anchor_suffix[nid] = mt.rep[old]
        if mt.is_leaf[old]:
            suffix_index[nid] = mt.rep[old]
        kid_ids = []
        for c in mt.children[old]:
            cid = len(new_id)
            new_id[c] = cid
            parent[cid] = nid
            kid_ids.append(cid)
        children_new[nid] = kid_ids
        counts[nid] = len(kid_ids)
        for c in reversed(mt.children[old]):
            stack.append(c)

    child_start = np.zeros(total_live + 1, dtype=np.int64)
    np.cumsum(counts, out=child_start[1:])
    child_list = np.empty(int(child_start[-1]), dtype=np.int64)
    for v in range(total_live):
        kid_ids = children_new[v]
        child_start_v = child_start[v]
        for i, c in enumerate(kid_ids):
            child_list[child_start_v + i] = c

    # leaves in DFS order
    leaves_lex = []
    walk = [0]
    while walk:
        v = walk.pop()
        if is_leaf[v]:
            leaves_lex.append(v)
        cs, ce = child_start[v], child_start[v + 1]
        for i in range(ce - 1, cs - 1, -1):
            walk.append(int(child_list[i]))
    leaves_in_lex_order = np.array(leaves_lex, dtype=np.int64)
    if len(leaves_in_lex_order) != r + 1:
        raise InternalInvariantViolation(
            f"expected {r + 1} leaves, found {len(leaves_in_lex_order)}"
        )
    leaf_of_suffix = np.empty(r + 1, dtype=np.int64)
    leaf_of_suffix[suffix_index[leaves_in_lex_order]] = leaves_in_lex_order

    # first run of str(v): the suffix's first run, clipped to the node depth
    symbols_ext = np.concatenate((rle.symbols, [-1]))
    exponents_ext = np.concatenate((rle.exponents, [0]))
    first_sym = symbols_ext[anchor_suffix]
    first_exp = np.minimum(exponents_ext[anchor_suffix], char_depth)
    first_sym[0] = -1

    # incoming edge anchors: run index + remaining chars of that run
    start_char = cb[anchor_suffix] + char_depth[parent.clip(min=0)]
    anchor_run = np.searchsorted(cb, start_char, side="right") - 1
    anchor_run = anchor_run.astype(np.int64)
    head_rem = cb[np.minimum(anchor_run + 1, r)] - start_char
    sentinel_edge = char_depth == char_depth[parent.clip(min=0)]
    anchor_run[sentinel_edge] = r
    head_rem[sentinel_edge] = 0
    anchor_run[0] = -1
    head_rem[0] = 0

    real_child_count = np.zeros(total_live, dtype=np.int64)
    for v in range(total_live):
        cs, ce = int(child_start[v]), int(child_start[v + 1])
        h = 0
        for i in range(cs, ce):
            if char_depth[child_list[i]] > char_depth[v]:
                h += 1
        real_child_count[v] = h

    return RSuffixTree(
        rle=rle,
        parent=parent,
        char_depth=char_depth,
        first_sym=first_sym,
        first_exp=first_exp,
        suffix_index=suffix_index,
        is_leaf=is_leaf,
        is_chain=is_chain,
        child_start=child_start,
        child_list=child_list,
        real_child_count=real_child_count,
        anchor_suffix=anchor_suffix,
        anchor_run=anchor_run,
        head_rem=head_rem,
        leaves_in_lex_order=leaves_in_lex_order,
        leaf_of_suffix=leaf_of_suffix,
    )


def edge_string(tree: RSuffixTree, v: int, limit: int = 10**6) -> str:
    """Expand the label of the incoming edge of v (test/debug helper)."""
    if v == 0:
        return ""
    rle = tree.rle
    length = int(tree.char_depth[v] - tree.char_depth[tree.parent[v]])
    if length > limit:
        raise ValueError(f"edge of length {length} exceeds limit")
    out = []
    run = int(tree.anchor_run[v])
    take = int(tree.head_rem[v])
    remaining = length
    while remaining > 0:
        take = min(take, remaining)
        out.append(rle.alphabet[int(rle.symbols[run])] * take)
        remaining -= take
        run += 1
        take = int(rle.exponents[run]) if run < rle.r else 0
    return "".join(out)


def node_string(tree: RSuffixTree, v: int, limit: int = 10**6) -> str:
    """str(v): concatenation of edge labels from the root (test/debug helper)."""
    if tree.char_depth[v] > limit:
        raise ValueError("node too deep to expand")
    parts = []
    while v != 0:
        parts.append(edge_string(tree, v, limit))
        v = int(tree.parent[v])
    return "".join(reversed(parts))


def to_dot(tree: RSuffixTree) -> str:
    """GraphViz dump with d(v), the first run, and node kind per label."""
    rle = tree.rle
    lines = ["digraph rstree {", "  node [shape=box, fontname=monospace];"]
    for v in range(tree.n_nodes):
        kind = "leaf" if tree.is_leaf[v] else ("chain" if tree.is_chain[v] else "branch")
        if v == 0:
            kind = "root"
        if tree.first_sym[v] >= 0:
            run = f"{rle.alphabet[int(tree.first_sym[v])]}^{int(tree.first_exp[v])}"
        else:
            run = "-"
        extra = ""
        if tree.is_leaf[v]:
            extra = f"\\nsuffix={int(tree.suffix_index[v])}"
        lines.append(
            f'  n{v} [label="#{v} {kind}\\nd={int(tree.char_depth[v])}'
            f"\\nfirst={run}{extra}\"];"
        )
    for v in range(tree.n_nodes):
        for c in tree.children(v):
            c = int(c)
            label = "$" if tree.char_depth[c] == tree.char_depth[v] else ""
            if not label:
                length = int(tree.char_depth[c] - tree.char_depth[v])
                if length <= 12:
                    label = edge_string(tree, c)
                else:
                    head = edge_string(tree, c)[:6] if length <= 10**6 else "..."
                    label = f"{head}..({length})"
            lines.append(f'  n{v} -> n{c} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
