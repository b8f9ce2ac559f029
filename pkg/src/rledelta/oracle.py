"""Uncompressed reference engine: the per-length distinct-substring profile
and its exact rational maximum, computed from the plain text.

counts[k] = (n - k + 1) - #{adjacent suffix pairs with LCP >= k}: every
suffix of length >= k contributes one candidate, and each LCP >= k merges two
of them.  Used as ground truth for the compressed engine and as the CLI's
reference engine; guarded to n <= 10^6.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import _kernels
from .errors import InputTooLarge
from .sweep import DeltaResult

ORACLE_LIMIT = 10**6
QUADRATIC_LIMIT = 4096


@dataclass(frozen=True)
class Profile:
    counts: np.ndarray  # counts[k] = |S(k)| for k in [1..n]; counts[0] = 0
    n: int
    sigma: int


def _codes(text) -> np.ndarray:
    if isinstance(text, (bytes, bytearray)):
        return np.frombuffer(bytes(text), dtype=np.uint8).astype(np.int64)
    return np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32).astype(np.int64)


def naive_profile(text) -> Profile:
    if len(text) > ORACLE_LIMIT:
        raise InputTooLarge(f"oracle limited to {ORACLE_LIMIT} characters")
    n = len(text)
    if n == 0:
        return Profile(np.zeros(1, dtype=np.int64), 0, 0)
    codes = _codes(text)
    sigma = len(np.unique(codes))
    sa = _kernels.suffix_array(codes)
    lcp = _kernels.lcp_array(codes, sa)
    hist = np.bincount(lcp, minlength=n + 1)
    ge = np.cumsum(hist[::-1])[::-1]  # ge[k] = #{i : lcp[i] >= k}
    k = np.arange(n + 1, dtype=np.int64)
    counts = (n - k + 1) - ge
    counts[0] = 0
    return Profile(counts, n, sigma)


def quadratic_profile(text) -> Profile:
    """Definitional enumeration (the oracle's oracle); n <= 4096."""
    if len(text) > QUADRATIC_LIMIT:
        raise InputTooLarge(f"quadratic oracle limited to {QUADRATIC_LIMIT}")
    n = len(text)
    counts = np.zeros(n + 1, dtype=np.int64)
    for k in range(1, n + 1):
        counts[k] = len({text[i : i + k] for i in range(n - k + 1)})
    return Profile(counts, n, len(set(text)))


def _delta_of_profile(profile: Profile, r: int) -> DeltaResult:
    best_num = 0
    best_den = 1
    best_k = 0
    counts = profile.counts.tolist()
    for k in range(1, profile.n + 1):
        c = counts[k]
        if c * best_den > best_num * k:
            best_num, best_den, best_k = c, k, k
    g = gcd(best_num, best_den) if best_num else 1
    return DeltaResult(
        best_num // g,
        best_den // g,
        best_k,
        best_num,
        r,
        profile.n,
        profile.sigma,
        change_points=[(k, counts[k]) for k in range(1, profile.n + 1)],
    )


def naive_delta(text) -> DeltaResult:
    profile = naive_profile(text)
    if profile.n == 0:
        return DeltaResult(0, 1, 0, 0, 0, 0, 0)
    codes = _codes(text)
    r = 1 + int(np.count_nonzero(codes[1:] != codes[:-1]))
    return _delta_of_profile(profile, r)
