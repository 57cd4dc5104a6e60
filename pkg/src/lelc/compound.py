"""Zero-run compression followed by an 8-to-9 bit mapping code.

Stage 1 turns each k_zero-bit word into ``1`` when it is all zeros and into
``0`` + word otherwise. Stage 2 zero-pads that intermediate stream to a whole
number of bytes and maps every byte through the inner rate-8/9 map. The
decoder needs the payload length, which is fixed by the link's packet format.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bits import BitString
from .errors import CorruptStreamError, FramingError, InvalidParameterError
from .mapping import CodebookMap, map_decode, map_encode, mapgen
from .profiler import DatawordHistogram, profile

ZERO_WORD_SIZES = (16, 32)
INNER_K, INNER_N = 8, 9


@dataclass(frozen=True)
class CompoundConfig:
    inner_map: CodebookMap
    k_zero: int = 32

    def __post_init__(self):
        if self.k_zero not in ZERO_WORD_SIZES:
            raise InvalidParameterError(f"k_zero must be one of {ZERO_WORD_SIZES}")
        if (self.inner_map.k, self.inner_map.n) != (INNER_K, INNER_N):
            raise InvalidParameterError("inner map must be k=8, n=9")


def zero_run_compress(payload: BitString, k_zero: int) -> str:
    s = payload.bits
    if len(s) % k_zero:
        raise FramingError(f"payload length {len(s)} is not a multiple of {k_zero}")
    zero = "0" * k_zero
    return "".join("1" if w == zero else "0" + w
                   for w in (s[i:i + k_zero] for i in range(0, len(s), k_zero)))


def compound_encode(payload: BitString, cfg: CompoundConfig) -> BitString:
    mid = zero_run_compress(payload, cfg.k_zero)
    mid += "0" * (-len(mid) % INNER_K)
    return map_encode(BitString._raw(mid), cfg.inner_map)


def compound_decode(coded: BitString, cfg: CompoundConfig, payload_bits: int) -> BitString:
    k = cfg.k_zero
    if payload_bits % k:
        raise FramingError(f"payload_bits={payload_bits} is not a multiple of {k}")
    mid = map_decode(coded, cfg.inner_map).bits
    zero = "0" * k
    out = []
    pos = done = 0
    while done < payload_bits:
        if pos >= len(mid):
            raise CorruptStreamError("intermediate stream ended early", offset=pos)
        if mid[pos] == "1":
            out.append(zero)
            pos += 1
        else:
            if pos + 1 + k > len(mid):
                raise CorruptStreamError("literal word runs past the stream", offset=pos)
            out.append(mid[pos + 1:pos + 1 + k])
            pos += 1 + k
        done += k
    return BitString._raw("".join(out))


def intermediate_profile(trace: Sequence[BitString], k_zero: int = 32) -> DatawordHistogram:
    """Byte histogram of the padded stage-1 streams of ``trace``."""
    mids = []
    for p in trace:
        mid = zero_run_compress(p, k_zero)
        mids.append(BitString._raw(mid + "0" * (-len(mid) % INNER_K)))
    return profile(mids, INNER_K)


def tuned_config(trace: Sequence[BitString], k_zero: int = 32,
                 weight_monotone: bool = False) -> CompoundConfig:
    """Compound code whose inner map is generated from the stage-1 output of ``trace``."""
    h = intermediate_profile(trace, k_zero)
    if h.total == 0:
        h = DatawordHistogram(INNER_K, [1] * (1 << INNER_K))
    return CompoundConfig(mapgen(h, INNER_N, weight_monotone), k_zero)
