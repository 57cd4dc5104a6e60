"""Prefix-pair codes: variable-length dataword paths mapped to codewords.

A table is a complete prefix-free set of dataword *paths* (the route from the
root of a tree to a leaf) together with the codeword stored at each leaf.
Encoding walks the input bits down the tree; decoding reads codewords and
emits the corresponding paths.

Payload framing
---------------
A payload rarely ends exactly on a path boundary. The framed coders handle the
tail deterministically: when fewer than ``min_path`` bits are left they are
sent raw, otherwise the remainder is extended with 0s to the nearest leaf and
that leaf's codeword is sent. The decoder knows how many dataword bits to
produce, so it reads raw bits at the same point and truncates the last path.
The chunked coder applies this per fixed dataword chunk and zero-pads every
chunk to a fixed codeword frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .bits import BitString
from .errors import (DecodeError, FramingError, IncompleteParseError,
                     InvalidParameterError, TableViolation)


@dataclass(frozen=True)
class PrefixCodeTable:
    entries: tuple[tuple[BitString, BitString], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(
            (_bs(p), _bs(c)) for p, c in self.entries))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]] | dict) -> "PrefixCodeTable":
        if isinstance(pairs, dict):
            pairs = pairs.items()
        return cls(tuple((BitString(p), BitString(c)) for p, c in pairs))

    def __len__(self):
        return len(self.entries)

    @property
    def min_path(self) -> int:
        return min(len(p) for p, _ in self.entries)

    @property
    def max_path(self) -> int:
        return max(len(p) for p, _ in self.entries)

    @property
    def max_codeword(self) -> int:
        return max(len(c) for _, c in self.entries)


def _bs(x) -> BitString:
    return x if isinstance(x, BitString) else BitString(x)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    weight_checked: bool = False
    weight_violations: tuple[int, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def _prefix_clashes(words: list[str]) -> list[tuple[str, str]]:
    clashes = []
    ordered = sorted(set(words))
    # in lexicographic order a word's extensions follow it directly
    for i, w in enumerate(ordered):
        for other in ordered[i + 1:]:
            if not other.startswith(w):
                break
            clashes.append((w, other))
    return clashes


def validate(table: PrefixCodeTable, check_weight: bool = False) -> ValidationReport:
    """Check completeness, prefix-freeness and distinctness of ``table``.

    With ``check_weight`` every entry must also satisfy
    weight(codeword) <= weight(path); offending entry indices are listed in
    ``weight_violations``.
    """
    v: list[Violation] = []
    paths = [p.bits for p, _ in table.entries]
    cws = [c.bits for _, c in table.entries]
    if not table.entries:
        v.append(Violation("empty-table", "no entries"))
        return ValidationReport(tuple(v), check_weight)
    for i, (p, c) in enumerate(zip(paths, cws)):
        if not p:
            v.append(Violation("empty-path", f"entry {i}"))
        if not c:
            v.append(Violation("empty-codeword", f"entry {i}"))
    for label, words in (("path", paths), ("codeword", cws)):
        seen = set()
        for w in words:
            if w in seen:
                v.append(Violation(f"duplicate-{label}", w))
            seen.add(w)
        for a, b in _prefix_clashes(words):
            v.append(Violation(f"{label}-prefix", f"{a} is a prefix of {b}"))
    kraft = sum(Fraction(1, 2 ** len(p)) for p in set(paths))
    if kraft != 1:
        v.append(Violation("kraft", f"sum of 2^-len over paths is {kraft}"))
    bad_weight: tuple[int, ...] = ()
    if check_weight:
        bad_weight = tuple(i for i, (p, c) in enumerate(zip(paths, cws))
                           if c.count("1") > p.count("1"))
        for i in bad_weight:
            v.append(Violation("weight", f"{cws[i]} has more 1s than path {paths[i]}"))
    return ValidationReport(tuple(v), check_weight, bad_weight)


@dataclass(frozen=True)
class _Compiled:
    path_to_cw: dict
    cw_to_path: dict
    path_lengths: tuple
    cw_lengths: tuple
    min_path: int
    max_path: int


@lru_cache(maxsize=64)
def _compile(table: PrefixCodeTable) -> _Compiled:
    report = validate(table)
    if not report.ok:
        raise TableViolation(report)
    p2c = {p.bits: c.bits for p, c in table.entries}
    c2p = {c: p for p, c in p2c.items()}
    plens = tuple(sorted({len(p) for p in p2c}))
    clens = tuple(sorted({len(c) for c in c2p}))
    return _Compiled(p2c, c2p, plens, clens, plens[0], plens[-1])


def _match(s: str, i: int, lookup: dict, lengths: tuple, limit: int):
    for n in lengths:
        if i + n > limit:
            return None
        hit = lookup.get(s[i:i + n])
        if hit is not None:
            return n, hit
    return None


def stream_encode(bits: BitString, table: PrefixCodeTable) -> BitString:
    """Codewords for the unique prefix parse of ``bits``."""
    t = _compile(table)
    s = bits.bits
    n = len(s)
    out = []
    i = 0
    while i < n:
        m = _match(s, i, t.path_to_cw, t.path_lengths, n)
        if m is None:
            raise IncompleteParseError(
                f"{n - i} trailing bits do not complete a path", BitString._raw(s[i:]))
        i += m[0]
        out.append(m[1])
    return BitString._raw("".join(out))


def stream_decode(coded: BitString, table: PrefixCodeTable) -> BitString:
    t = _compile(table)
    s = coded.bits
    n = len(s)
    out = []
    i = 0
    while i < n:
        m = _match(s, i, t.cw_to_path, t.cw_lengths, n)
        if m is None:
            raise DecodeError("no codeword matches", offset=i)
        i += m[0]
        out.append(m[1])
    return BitString._raw("".join(out))


def _encode_frame(s: str, t: _Compiled) -> list[str]:
    n = len(s)
    out = []
    i = 0
    while i < n:
        rem = n - i
        if rem < t.min_path:
            out.append(s[i:])
            break
        m = _match(s, i, t.path_to_cw, t.path_lengths, n)
        if m is not None:
            i += m[0]
            out.append(m[1])
            continue
        tail = s[i:]
        for extra in range(1, t.max_path - rem + 1):
            cw = t.path_to_cw.get(tail + "0" * extra)
            if cw is not None:
                out.append(cw)
                break
        else:  # pragma: no cover - a complete table always has a zero-leaf
            raise IncompleteParseError("no leaf below residue", BitString._raw(tail))
        break
    return out


def _decode_frame(s: str, pos: int, end: int, nbits: int, t: _Compiled) -> tuple[list[str], int]:
    out = []
    done = 0
    while done < nbits:
        left = nbits - done
        if left < t.min_path:
            if pos + left > end:
                raise DecodeError("stream ends inside raw tail", offset=pos)
            out.append(s[pos:pos + left])
            pos += left
            break
        m = _match(s, pos, t.cw_to_path, t.cw_lengths, end)
        if m is None:
            raise DecodeError("no codeword matches", offset=pos)
        pos += m[0]
        path = m[1][:left]
        out.append(path)
        done += len(path)
    return out, pos


def framed_encode(payload: BitString, table: PrefixCodeTable) -> BitString:
    """Encode a whole payload, handling a partial final path (see module doc)."""
    return BitString._raw("".join(_encode_frame(payload.bits, _compile(table))))


def framed_decode(coded: BitString, table: PrefixCodeTable, payload_bits: int) -> BitString:
    t = _compile(table)
    s = coded.bits
    out, pos = _decode_frame(s, 0, len(s), payload_bits, t)
    if pos != len(s):
        raise DecodeError(f"{len(s) - pos} unread bits after payload", offset=pos)
    return BitString._raw("".join(out))


@dataclass(frozen=True)
class ChunkFrameConfig:
    dataword_chunk_bits: int = 32
    codeword_chunk_bits: int = 42
    min_path: int = 3
    codeword_bits: int = 4

    def __post_init__(self):
        if min(self.dataword_chunk_bits, self.codeword_chunk_bits,
               self.min_path, self.codeword_bits) < 1:
            raise InvalidParameterError("chunk frame parameters must be positive")
        if self.codeword_chunk_bits < self.bound():
            raise InvalidParameterError(
                f"codeword chunk of {self.codeword_chunk_bits} bits cannot hold "
                f"the worst case of {self.bound()} bits")

    def bound(self) -> int:
        """Worst-case coded size of one dataword chunk."""
        d, m = self.dataword_chunk_bits, self.min_path
        return (d // m) * self.codeword_bits + d % m

    @property
    def rate(self) -> float:
        return self.dataword_chunk_bits / self.codeword_chunk_bits


def chunked_encode(payload: BitString, table: PrefixCodeTable,
                   cfg: ChunkFrameConfig) -> BitString:
    t = _compile(table)
    d, c = cfg.dataword_chunk_bits, cfg.codeword_chunk_bits
    s = payload.bits
    if len(s) % d:
        raise FramingError(f"payload length {len(s)} is not a multiple of {d}")
    frames = []
    for i in range(0, len(s), d):
        body = "".join(_encode_frame(s[i:i + d], t))
        if len(body) > c:
            raise FramingError(f"chunk at bit {i} needs {len(body)} > {c} bits")
        frames.append(body + "0" * (c - len(body)))
    return BitString._raw("".join(frames))


def chunked_decode(coded: BitString, table: PrefixCodeTable,
                   cfg: ChunkFrameConfig) -> BitString:
    t = _compile(table)
    d, c = cfg.dataword_chunk_bits, cfg.codeword_chunk_bits
    s = coded.bits
    if len(s) % c:
        raise FramingError(f"coded length {len(s)} is not a multiple of {c}")
    out = []
    for frame, start in enumerate(range(0, len(s), c)):
        try:
            bits, _ = _decode_frame(s, start, start + c, d, t)
        except DecodeError as exc:
            raise DecodeError(f"frame {frame}: {exc}") from None
        out.extend(bits)
    return BitString._raw("".join(out))


HUFFMAN_EXAMPLE = PrefixCodeTable.from_pairs(
    [("00", "0"), ("11", "11"), ("01", "100"), ("10", "101")])

_TC1_PAIRS = [
    ("000", "0000"), ("001", "0001"), ("010", "0010"), ("011", "0011"),
    ("100", "0100"), ("101", "0101"), ("110", "0110"),
    ("1110", "0111"), ("11110", "1011"), ("11111", "1101"),
]

_TC2_PAIRS = [
    ("0000", "0000"), ("0001", "0001"), ("001", "0010"), ("010", "0100"),
    ("011", "0011"), ("100", "1000"), ("101", "0101"), ("110", "0110"),
    ("1110", "0111"), ("11110", "1011"), ("111110", "1101"), ("111111", "1110"),
]

TC1_FRAME = ChunkFrameConfig()
_TC1 = PrefixCodeTable.from_pairs(_TC1_PAIRS)
_TC2 = PrefixCodeTable.from_pairs(_TC2_PAIRS)


def builtin_tc1() -> PrefixCodeTable:
    """Tree code 1: depth-3 left region, 1s runs up to 5 folded into 4 bits."""
    return _TC1


def builtin_tc2() -> PrefixCodeTable:
    """Tree code 2: all-zero 4-bit dataword sent unchanged, 1s runs up to 6."""
    return _TC2


def tc1_chunked_encode(payload: BitString, cfg: ChunkFrameConfig = TC1_FRAME) -> BitString:
    return chunked_encode(payload, builtin_tc1(), cfg)


def tc1_chunked_decode(coded: BitString, cfg: ChunkFrameConfig = TC1_FRAME) -> BitString:
    return chunked_decode(coded, builtin_tc1(), cfg)
