"""Run-length encoded strings.

The whole pipeline works on :class:`RleString` values and never materializes
the decoded text.  External symbols (characters / byte values) are mapped to
dense 0-based ranks at ingestion, ordered by code point, so every downstream
structure indexes by rank and rank order agrees with character order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import (
    AdjacentEqualRuns,
    ExponentOverflow,
    InputTooLarge,
    MalformedLine,
    NonPositiveExponent,
)

# Exponents and total length are kept below 2^62 so rational comparisons can
# cross-multiply into ~124 bits without surprises.
MAX_LEN = 1 << 62

DECODE_LIMIT = 10**6


class Run(NamedTuple):
    symbol: int  # dense alphabet rank
    exponent: int


@dataclass(frozen=True)
class RleString:
    """Canonical run-length encoding: adjacent runs carry distinct symbols."""

    symbols: np.ndarray  # int64[r], dense ranks
    exponents: np.ndarray  # int64[r]
    n: int  # total character length
    boundaries: np.ndarray  # int64[r], 1-based start position of run j
    alphabet: tuple  # rank -> external single-character symbol
    rank_of: dict = field(repr=False)  # external symbol -> rank

    @property
    def r(self) -> int:
        return len(self.symbols)

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    def runs(self) -> Iterable[Run]:
        for s, e in zip(self.symbols.tolist(), self.exponents.tolist()):
            yield Run(s, e)

    def external_runs(self):
        """(character, exponent) pairs using the original symbols."""
        for s, e in zip(self.symbols.tolist(), self.exponents.tolist()):
            yield self.alphabet[s], e


def _build(chars: list, exps: list) -> RleString:
    alphabet = tuple(sorted(set(chars)))
    rank_of = {c: i for i, c in enumerate(alphabet)}
    symbols = np.array([rank_of[c] for c in chars], dtype=np.int64)
    exponents = np.array(exps, dtype=np.int64)
    n = int(exponents.sum()) if len(exps) else 0
    if n > MAX_LEN:
        raise ExponentOverflow(f"total length {n} exceeds 2^62")
    boundaries = np.empty(len(exps), dtype=np.int64)
    if len(exps):
        boundaries[0] = 1
        np.cumsum(exponents[:-1], out=boundaries[1:])
        boundaries[1:] += 1
    return RleString(symbols, exponents, n, boundaries, alphabet, rank_of)


def encode(text) -> RleString:
    """Run-length encode a str or bytes value."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("latin-1")
    if len(text) == 0:
        return _build([], [])
    codes = np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32)
    starts = np.concatenate(([0], np.flatnonzero(codes[1:] != codes[:-1]) + 1))
    lengths = np.diff(np.concatenate((starts, [len(codes)])))
    chars = [chr(int(c)) for c in codes[starts]]
    return _build(chars, lengths.tolist())


def decode(rle: RleString, limit: int = DECODE_LIMIT) -> str:
    """Expand an RleString back into text.  Test/CLI helper, guarded by size."""
    if rle.n > limit:
        raise InputTooLarge(f"decoded length {rle.n} exceeds limit {limit}")
    if rle.r == 0:
        return ""
    codes = np.array([ord(c) for c in rle.alphabet], dtype=np.uint32)
    expanded = np.repeat(codes[rle.symbols], rle.exponents)
    return expanded.tobytes().decode("utf-32-le")


def _parse_symbol_token(tok: str):
    if len(tok) == 1:
        return tok
    if tok.lower().startswith("0x") and len(tok) > 2:
        try:
            return chr(int(tok[2:], 16))
        except ValueError:
            return None
    return None


def parse_rle(text: str, normalize: bool = False) -> RleString:
    """Parse the RLE text format: one ``<symbol> <exponent>`` pair per line.

    ``#`` starts a comment line; the symbol is a single printable character or
    a ``0xNN`` escape.  With ``normalize`` set, adjacent equal-symbol runs are
    merged instead of rejected.
    """
    chars: list = []
    exps: list = []
    total = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise MalformedLine(lineno, raw)
        sym = _parse_symbol_token(parts[0])
        if sym is None:
            raise MalformedLine(lineno, raw, "bad symbol")
        try:
            exp = int(parts[1])
        except ValueError:
            raise MalformedLine(lineno, raw, "bad exponent") from None
        if exp <= 0:
            raise NonPositiveExponent(f"line {lineno}: exponent {exp} must be >= 1")
        if exp > MAX_LEN:
            raise ExponentOverflow(f"line {lineno}: exponent {exp} exceeds 2^62")
        if chars and chars[-1] == sym:
            if not normalize:
                raise AdjacentEqualRuns(
                    f"line {lineno}: run {sym!r} repeats the previous symbol"
                )
            exps[-1] += exp
        else:
            chars.append(sym)
            exps.append(exp)
        total += exp
        if total > MAX_LEN:
            raise ExponentOverflow("total length exceeds 2^62")
    return _build(chars, exps)


def _format_symbol(c: str) -> str:
    if c.isprintable() and not c.isspace() and c != "#" and len(c) == 1:
        return c
    return f"0x{ord(c):02X}"


def serialize_rle(rle: RleString) -> str:
    lines = [f"{_format_symbol(c)} {e}" for c, e in rle.external_runs()]
    return "\n".join(lines) + ("\n" if lines else "")


def from_runs(pairs) -> RleString:
    """Build an RleString from (character, exponent) pairs (validated)."""
    chars = []
    exps = []
    for c, e in pairs:
        e = int(e)
        if e <= 0:
            raise NonPositiveExponent(f"exponent {e} must be >= 1")
        if e > MAX_LEN:
            raise ExponentOverflow(f"exponent {e} exceeds 2^62")
        if chars and chars[-1] == c:
            raise AdjacentEqualRuns(f"adjacent runs share symbol {c!r}")
        chars.append(c)
        exps.append(e)
    return _build(chars, exps)
