"""Event sweep: turn root/explicit-node attributes into second-difference
events on k, reconstruct the substring-count profile piecewise, and maximize
count/k as an exact rational.

Weights enter the slope of the profile one coordinate later: an event (k, w)
means the first difference changes by w between steps k and k+1.  A diff-root
v contributes (|t(v)|-1, +1) and (d(v), -1); an explicit member u with h real
children contributes (|t(u)|, h-1) and (d(u)+1, 1-h).  Candidates for the
maximum are every event coordinate and its successor, clamped to [1..n]:
between consecutive coordinates the profile is linear, so the ratio is
maximized at an endpoint.

All sweep arithmetic is in Python integers; coordinates reach n + 1 (up to
2^62 + 1) and slope-times-gap products overflow any fixed width.  Rational
comparisons cross-multiply, never divide.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import intsort
from .dmn import (
    DmnRoots,
    ExplicitDNodes,
    build_rem_lists,
    collect_dmn_roots,
    collect_explicit_d_nodes,
    compute_b_depths,
)
from .errors import InternalInvariantViolation
from .lca import build_lca_oracle
from .rle import RleString
from .rstree import build_rsuffix_tree


@dataclass(frozen=True)
class DeltaResult:
    delta_num: int
    delta_den: int
    argmax_k: int
    substr_at_argmax: int
    r: int
    n: int
    sigma: int
    # (k, |S(k)|) at every evaluated candidate k, ascending
    change_points: list = field(default_factory=list, repr=False)
    # (coord, count at coord, slope after coord) pieces for reconstruction
    breakpoints: list = field(default_factory=list, repr=False)

    @property
    def value(self) -> float:
        return self.delta_num / self.delta_den

    def count_at(self, k: int) -> int:
        """|S(k)| for any k in [1..n], from the piecewise-linear profile."""
        if not 1 <= k <= self.n:
            raise ValueError(f"k={k} outside [1..{self.n}]")
        i = bisect_right(self.breakpoints, k, key=lambda bp: bp[0]) - 1
        if i < 0:
            return 0
        c, val, slope = self.breakpoints[i]
        return val + slope * (k - c)


def build_events(roots: DmnRoots, explicits: ExplicitDNodes):
    """Raw (coordinate, weight) event pairs; zero weights are kept here and
    dropped after aggregation."""
    coords = np.concatenate(
        (
            roots.t_len - 1,
            roots.depth,
            explicits.t_len,
            explicits.depth + 1,
        )
    )
    nroots = len(roots.depth)
    weights = np.concatenate(
        (
            np.ones(nroots, dtype=np.int64),
            -np.ones(nroots, dtype=np.int64),
            explicits.child_count - 1,
            1 - explicits.child_count,
        )
    )
    return coords.astype(np.int64), weights


def compute_delta(
    coords: np.ndarray,
    weights: np.ndarray,
    n: int,
    r: int = 0,
    sigma: int = 0,
) -> DeltaResult:
    """Sort events, sweep, and take the exact rational maximum of |S(k)|/k.

    Raises InternalInvariantViolation if the event multiset fails its
    zero-sum invariants or the reconstructed profile dips below zero or fails
    to return to zero: both indicate an upstream bug, not bad input.
    """
    if len(coords) == 0:
        return DeltaResult(0, 1, 0, 0, r, n, sigma)
    order = intsort.sort_by_key(coords, "radix")
    cs = coords[order].tolist()
    ws = weights[order].tolist()

    if sum(ws) != 0:
        raise InternalInvariantViolation("event weights do not sum to zero")
    if sum(c * w for c, w in zip(cs, ws)) != 0:
        raise InternalInvariantViolation("event moments do not sum to zero")

    # aggregate per coordinate, drop zero totals
    agg: list = []
    i = 0
    while i < len(cs):
        j = i
        w = 0
        while j < len(cs) and cs[j] == cs[i]:
            w += ws[j]
            j += 1
        if w != 0:
            agg.append((cs[i], w))
        i = j

    slope = 0
    k_cur = 0
    count = 0
    breakpoints = [(0, 0, 0)]
    for c, w in agg:
        count += slope * (c - k_cur)
        k_cur = c
        if count < 0:
            raise InternalInvariantViolation(f"negative substring count at k={k_cur}")
        slope += w
        breakpoints.append((c, count, slope))
    if count != 0 or slope != 0:
        raise InternalInvariantViolation(
            "profile does not return to zero after the last event"
        )

    def profile_at(k: int) -> int:
        i = bisect_right(breakpoints, k, key=lambda bp: bp[0]) - 1
        c, val, sl = breakpoints[i]
        return val + sl * (k - c)

    candidates = {1}
    for c, _ in agg:
        for k in (c, c + 1):
            if 1 <= k <= n:
                candidates.add(k)
    best_num = 0
    best_den = 1
    best_k = 0
    change_points = []
    for k in sorted(candidates):
        cnt = profile_at(k)
        change_points.append((k, cnt))
        if cnt * best_den > best_num * k:  # strict: ties keep the smaller k
            best_num, best_den, best_k = cnt, k, k
    g = gcd(best_num, best_den)
    return DeltaResult(
        best_num // g,
        best_den // g,
        best_k,
        best_num,
        r,
        n,
        sigma,
        change_points,
        breakpoints,
    )


def delta_from_rle(rle: RleString, linear_rmq: bool = False) -> DeltaResult:
    """End-to-end: tree, LCP oracle, boundary depths, events, sweep."""
    if rle.r == 0:
        return DeltaResult(0, 1, 0, 0, 0, 0, 0)
    tree = build_rsuffix_tree(rle)
    oracle = build_lca_oracle(tree, linear_rmq=linear_rmq)
    lists = build_rem_lists(tree)
    b_depth = compute_b_depths(tree, oracle, lists)
    roots = collect_dmn_roots(tree, b_depth)
    explicits = collect_explicit_d_nodes(tree, b_depth)
    coords, weights = build_events(roots, explicits)
    return compute_delta(coords, weights, rle.n, rle.r, rle.sigma)


def full_profile(result: DeltaResult) -> np.ndarray:
    """counts[k] = |S(k)| for k in [0..n] expanded from the breakpoints.

    Intended for verification at small n; refuses above 10^7 entries.
    """
    n = result.n
    if n > 10**7:
        raise ValueError("profile too large to expand")
    counts = np.zeros(n + 1, dtype=np.int64)
    bps = result.breakpoints
    for i, (c, val, slope) in enumerate(bps):
        end = bps[i + 1][0] if i + 1 < len(bps) else n
        end = min(end, n)
        if c > n:
            break
        steps = np.arange(0, end - c + 1, dtype=np.int64)
        counts[c : end + 1] = val + slope * steps
    return counts
