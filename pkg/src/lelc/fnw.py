"""Flip-N-Write and its two-level extension.

Each k-bit dataword is sent as-is followed by a 0 flag, or complemented and
followed by a 1 flag when it holds more than floor(k/2) ones. The two-level
variant applies the same rule once more to every group of f flag bits and
appends a second-level flag after the group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bits import BitString, complement
from .errors import FramingError, InvalidParameterError

_TABLE_MAX_K = 12


@dataclass(frozen=True)
class FnwConfig:
    k: int
    levels: int = 1
    f: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParameterError(f"k must be >= 1, got {self.k}")
        if self.levels not in (1, 2):
            raise InvalidParameterError(f"levels must be 1 or 2, got {self.levels}")
        if self.f is None:
            object.__setattr__(self, "f", self.k)
        if self.f < 1:
            raise InvalidParameterError(f"f must be >= 1, got {self.f}")

    @property
    def rate(self) -> float:
        if self.levels == 1:
            return self.k / (self.k + 1)
        return self.k * self.f / (self.f * (self.k + 1) + 1)


def _flip_word(word: str, half: int) -> str:
    if word.count("1") > half:
        return complement(word) + "1"
    return word + "0"


@lru_cache(maxsize=None)
def _encode_table(k: int) -> dict[str, str]:
    half = k // 2
    fmt = f"0{k}b"
    return {format(v, fmt): _flip_word(format(v, fmt), half) for v in range(1 << k)}


def _encode_words(s: str, k: int) -> list[str]:
    if k <= _TABLE_MAX_K:
        table = _encode_table(k)
        return [table[s[i:i + k]] for i in range(0, len(s), k)]
    half = k // 2
    return [_flip_word(s[i:i + k], half) for i in range(0, len(s), k)]


def _decode_word(cw: str) -> str:
    return complement(cw[:-1]) if cw[-1] == "1" else cw[:-1]


def fnw_encode(payload: BitString, cfg: FnwConfig) -> BitString:
    k = cfg.k
    if len(payload) % k:
        raise FramingError(f"payload length {len(payload)} is not a multiple of k={k}")
    return BitString._raw("".join(_encode_words(payload.bits, k)))


def fnw_decode(coded: BitString, cfg: FnwConfig) -> BitString:
    n = cfg.k + 1
    s = coded.bits
    if len(s) % n:
        raise FramingError(f"coded length {len(s)} is not a multiple of {n}")
    return BitString._raw("".join(_decode_word(s[i:i + n]) for i in range(0, len(s), n)))


def _group_size(cfg: FnwConfig) -> int:
    return cfg.f * (cfg.k + 1) + 1


def fnw2_encode(payload: BitString, cfg: FnwConfig) -> BitString:
    k, f = cfg.k, cfg.f
    s = payload.bits
    if len(s) % (k * f):
        raise FramingError(
            f"payload length {len(s)} is not a multiple of k*f={k * f}")
    words = _encode_words(s, k)
    half = f // 2
    out = []
    for g in range(0, len(words), f):
        group = words[g:g + f]
        if sum(cw[-1] == "1" for cw in group) > half:
            out.extend(cw[:-1] + ("0" if cw[-1] == "1" else "1") for cw in group)
            out.append("1")
        else:
            out.extend(group)
            out.append("0")
    return BitString._raw("".join(out))


def fnw2_decode(coded: BitString, cfg: FnwConfig) -> BitString:
    k, f = cfg.k, cfg.f
    n = k + 1
    size = _group_size(cfg)
    s = coded.bits
    if len(s) % size:
        raise FramingError(f"coded length {len(s)} is not a multiple of {size}")
    out = []
    for g in range(0, len(s), size):
        flip_flags = s[g + size - 1] == "1"
        for i in range(g, g + f * n, n):
            data, flag = s[i:i + k], s[i + k]
            if flip_flags:
                flag = "0" if flag == "1" else "1"
            out.append(complement(data) if flag == "1" else data)
    return BitString._raw("".join(out))


def encode(payload: BitString, cfg: FnwConfig) -> BitString:
    if cfg.levels == 1:
        return fnw_encode(payload, cfg)
    return fnw2_encode(payload, cfg)


def decode(coded: BitString, cfg: FnwConfig) -> BitString:
    if cfg.levels == 1:
        return fnw_decode(coded, cfg)
    return fnw2_decode(coded, cfg)

