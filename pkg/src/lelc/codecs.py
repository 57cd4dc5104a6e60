"""Uniform payload codec objects and the ``name:args`` codec selector.

Every codec maps one payload to one coded payload. ``decode`` receives the
original payload length because the variable-rate codes need it to find the
end of the data.
"""

from __future__ import annotations

from . import fnw as _fnw
from . import prefixcode as _pfx
from .bits import BitString
from .compound import CompoundConfig, compound_decode, compound_encode
from .errors import DecodeError, InvalidParameterError
from .mapping import CodebookMap, map_decode, map_encode, mapgen
from .profiler import DatawordHistogram


class Codec:
    name = "codec"
    variable_rate = False

    def needs_source_bits(self, payload_bits: int) -> bool:
        """Whether ``decode`` must be told the original payload length."""
        return self.variable_rate

    def encode(self, payload: BitString) -> BitString:
        raise NotImplementedError

    def decode(self, coded: BitString, payload_bits: int) -> BitString:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class IdentityCodec(Codec):
    name = "raw"

    def encode(self, payload):
        return payload

    def decode(self, coded, payload_bits):
        return coded


class FnwCodec(Codec):
    """Flip-N-Write on whole payloads.

    A payload that does not split into whole groups gets its last group
    zero-padded; the decoder drops the pad using the payload length.
    """

    def __init__(self, k: int, f: int | None = None, levels: int = 1):
        self.cfg = _fnw.FnwConfig(k, levels, f)
        self.name = f"fnw:{k}" if levels == 1 else f"fnw2:{k},{self.cfg.f}"
        self.group = k if levels == 1 else k * self.cfg.f

    def needs_source_bits(self, payload_bits):
        return payload_bits % self.group != 0

    def encode(self, payload):
        pad = -len(payload) % self.group
        if pad:
            payload = payload + BitString.zeros(pad)
        return _fnw.encode(payload, self.cfg)

    def decode(self, coded, payload_bits):
        out = _fnw.decode(coded, self.cfg)
        if payload_bits is not None and len(out) != payload_bits:
            if not 0 <= len(out) - payload_bits < self.group:
                raise DecodeError(
                    f"{len(out)} decoded bits cannot hold a {payload_bits}-bit payload")
            out = out[:payload_bits]
        return out


class MapCodec(Codec):
    def __init__(self, m: CodebookMap, name: str | None = None):
        self.map = m
        self.name = name or f"map({m.k}->{m.n})"

    def encode(self, payload):
        return map_encode(payload, self.map)

    def decode(self, coded, payload_bits):
        return map_decode(coded, self.map)


class PrefixCodec(Codec):
    """Whole-payload tree code with deterministic tail handling."""

    variable_rate = True

    def __init__(self, table: _pfx.PrefixCodeTable, name: str = "pfx"):
        self.table = table
        self.name = name

    def encode(self, payload):
        return _pfx.framed_encode(payload, self.table)

    def decode(self, coded, payload_bits):
        return _pfx.framed_decode(coded, self.table, payload_bits)


class ChunkedPrefixCodec(Codec):
    def __init__(self, table: _pfx.PrefixCodeTable | None = None,
                 cfg: _pfx.ChunkFrameConfig = _pfx.TC1_FRAME, name: str = "tc1p"):
        self.table = table or _pfx.builtin_tc1()
        self.cfg = cfg
        self.name = name

    def encode(self, payload):
        return _pfx.chunked_encode(payload, self.table, self.cfg)

    def decode(self, coded, payload_bits):
        return _pfx.chunked_decode(coded, self.table, self.cfg)


class CompoundCodec(Codec):
    variable_rate = True

    def __init__(self, cfg: CompoundConfig):
        self.cfg = cfg
        self.name = f"compound:{cfg.k_zero}"

    def encode(self, payload):
        return compound_encode(payload, self.cfg)

    def decode(self, coded, payload_bits):
        return compound_decode(coded, self.cfg, payload_bits)


def tc1() -> PrefixCodec:
    return PrefixCodec(_pfx.builtin_tc1(), "tc1")


def tc2() -> PrefixCodec:
    return PrefixCodec(_pfx.builtin_tc2(), "tc2")


def tc1p() -> ChunkedPrefixCodec:
    return ChunkedPrefixCodec()


def mapping1(h: DatawordHistogram, weight_monotone: bool = False) -> MapCodec:
    """Rate-k/(k+1) mapping code (k=8 gives the 8/9 code)."""
    return MapCodec(mapgen(h, h.k + 1, weight_monotone), "mapping1")


def mapping2(h: DatawordHistogram) -> MapCodec:
    """Rate-1 mapping code."""
    return MapCodec(mapgen(h, h.k), "mapping2")


def parse_codec(spec: str) -> Codec:
    """Build a codec from ``fnw:K``, ``fnw2:K,F``, ``map:FILE``, ``tc1``,
    ``tc1p``, ``tc2``, ``pfx:FILE``, ``compound:K,FILE`` or ``raw``."""
    from . import formats

    name, _, arg = spec.partition(":")
    try:
        if name == "raw" and not arg:
            return IdentityCodec()
        if name in ("tc1", "tc1p", "tc2") and not arg:
            return {"tc1": tc1, "tc1p": tc1p, "tc2": tc2}[name]()
        if name == "fnw":
            return FnwCodec(int(arg))
        if name == "fnw2":
            k, _, f = arg.partition(",")
            return FnwCodec(int(k), int(f) if f else None, levels=2)
        if name == "map" and arg:
            return MapCodec(formats.read_map(arg), f"map:{arg}")
        if name == "pfx" and arg:
            return PrefixCodec(formats.read_prefix_table(arg), f"pfx:{arg}")
        if name == "compound":
            k, sep, path = arg.partition(",")
            if sep and path:
                return CompoundCodec(CompoundConfig(formats.read_map(path), int(k)))
    except ValueError as exc:
        if isinstance(exc, InvalidParameterError) or type(exc) is not ValueError:
            raise
        raise InvalidParameterError(f"bad codec arguments in {spec!r}: {exc}") from None
    raise InvalidParameterError(f"unknown codec {spec!r}")
