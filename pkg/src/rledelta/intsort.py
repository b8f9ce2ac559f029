"""Stable integer-key sorting used by meta-alphabet construction and the
event sweep.

Two interchangeable strategies: ``comparison`` (numpy's stable mergesort /
lexsort) and ``radix`` (LSD with counting buckets, digit base = smallest
power of two >= the item count, clamped to [2^8, 2^16]).  Both return the
same permutation on every input; stability makes it unique.  Keys are
non-negative and fit in one or two 62-bit words.
"""
from __future__ import annotations

import numpy as np

from . import _kernels

STRATEGIES = ("comparison", "radix")


def digit_bits(count: int) -> int:
    """Digit width in bits: smallest power of two >= count, clamped."""
    bits = max(int(count - 1).bit_length(), 1) if count > 1 else 1
    return min(max(bits, 8), 16)


def sort_by_key(keys, strategy: str = "radix") -> np.ndarray:
    """Stable ascending permutation for int64 keys (or an (hi, lo) pair of
    arrays encoding up to 124-bit composite keys).

    The returned array holds item indices; apply it to payloads to obtain the
    sorted sequence.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(keys, tuple):
        hi, lo = keys
        hi = np.ascontiguousarray(hi, dtype=np.int64)
        lo = np.ascontiguousarray(lo, dtype=np.int64)
        if hi.shape != lo.shape:
            raise ValueError("hi/lo key words must have equal length")
        if strategy == "comparison":
            return np.lexsort((lo, hi)).astype(np.int64)
        return _kernels.radix_order_pairs(hi, lo, digit_bits(len(hi)))
    keys = np.ascontiguousarray(keys, dtype=np.int64)
    if strategy == "comparison":
        return np.argsort(keys, kind="stable").astype(np.int64)
    return _kernels.radix_order(keys, digit_bits(len(keys)))


def sorted_items(items, strategy: str = "radix"):
    """Sort (key, payload) pairs; convenience wrapper over sort_by_key."""
    keys = np.array([k for k, _ in items], dtype=np.int64)
    payloads = [p for _, p in items]
    order = sort_by_key(keys, strategy)
    return [(int(keys[i]), payloads[i]) for i in order]
