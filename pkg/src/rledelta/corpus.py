"""Deterministic test-corpus generators.

Text-producing families (fibonacci, thue_morse) are capped well below the
2^62 length bound because their run counts grow with n anyway; random_runs
and power_string build RleStrings directly and scale to astronomic n.
"""
from __future__ import annotations

import numpy as np

from .errors import ParamOutOfRange
from .rle import MAX_LEN, RleString, encode, from_runs

TEXT_CAP = 10**7


def fibonacci_word(order: int) -> str:
    """F1 = "b", F2 = "a", F_k = F_{k-1} F_{k-2}."""
    if order < 1:
        raise ParamOutOfRange("fibonacci order must be >= 1")
    a, b = "b", "a"  # F1, F2
    if order == 1:
        return a
    for _ in range(order - 2):
        a, b = b, b + a
        if len(b) > TEXT_CAP:
            raise ParamOutOfRange(f"fibonacci order {order} exceeds {TEXT_CAP} chars")
    return b


def thue_morse(order: int) -> str:
    """The 2^order-long prefix: t_{k+1} = t_k + complement(t_k)."""
    if order < 0:
        raise ParamOutOfRange("thue-morse order must be >= 0")
    if 2**order > TEXT_CAP:
        raise ParamOutOfRange(f"thue-morse order {order} exceeds {TEXT_CAP} chars")
    bits = np.zeros(1, dtype=np.uint8)
    for _ in range(order):
        bits = np.concatenate((bits, 1 - bits))
    return "".join("ab"[b] for b in bits.tolist())


def power_string(symbol: str, exponent: int) -> RleString:
    if not (1 <= exponent <= MAX_LEN):
        raise ParamOutOfRange(f"exponent {exponent} outside [1, 2^62]")
    return from_runs([(symbol, exponent)])


_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def random_runs(
    r: int,
    sigma: int = 2,
    max_exponent: int = 8,
    seed: int = 0,
) -> RleString:
    """r random runs over sigma symbols, adjacent symbols distinct,
    exponents uniform in [1, max_exponent].  Deterministic per seed."""
    if r < 0:
        raise ParamOutOfRange("r must be >= 0")
    if not (2 <= sigma <= len(_ALPHABET)):
        raise ParamOutOfRange(f"sigma must be in [2, {len(_ALPHABET)}]")
    if not (1 <= max_exponent <= MAX_LEN):
        raise ParamOutOfRange("max_exponent outside [1, 2^62]")
    if r * max_exponent > MAX_LEN:
        raise ParamOutOfRange("r * max_exponent may exceed 2^62")
    rng = np.random.default_rng(seed)
    pairs = []
    prev = -1
    for _ in range(r):
        s = int(rng.integers(0, sigma - 1 if prev >= 0 else sigma))
        if prev >= 0 and s >= prev:
            s += 1  # skip the previous symbol, keeping the draw uniform
        e = int(rng.integers(1, max_exponent + 1))
        pairs.append((_ALPHABET[s], e))
        prev = s
    return from_runs(pairs)


def random_text(n: int, sigma: int = 2, seed: int = 0) -> str:
    if n < 0 or n > TEXT_CAP:
        raise ParamOutOfRange(f"n outside [0, {TEXT_CAP}]")
    if not (1 <= sigma <= len(_ALPHABET)):
        raise ParamOutOfRange("sigma outside alphabet")
    rng = np.random.default_rng(seed)
    return "".join(_ALPHABET[i] for i in rng.integers(0, sigma, size=n).tolist())


def generate(family: str, **params) -> RleString:
    """Dispatcher for the CLI generate subcommand."""
    if family == "fibonacci":
        return encode(fibonacci_word(params.get("order", 7)))
    if family == "thue-morse":
        return encode(thue_morse(params.get("order", 6)))
    if family == "power":
        return power_string(params.get("symbol", "a"), params.get("exponent", 10))
    if family == "random-runs":
        return random_runs(
            params.get("r", 16),
            params.get("sigma", 2),
            params.get("max_exponent", 8),
            params.get("seed", 0),
        )
    raise ParamOutOfRange(f"unknown family {family!r}")
