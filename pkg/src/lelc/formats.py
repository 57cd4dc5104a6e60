"""Readers and writers for the on-disk formats.

Binary trace files::

    "LELC" | version (1 byte) | payload_bits (u32 LE) | payload_count (u32 LE)
    version 2 only: payload_count x bit length (u32 LE)
    payloads, each ceil(bits / 8) bytes, MSB first, zero-padded

In version 1 every payload is ``payload_bits`` long. Version 2 holds
variable-length coded payloads; ``payload_bits`` then records the length of
the payloads they were encoded from.

Text formats start with a magic word line: ``LELCHIST <k>`` (histograms),
``LELCMAP <k> <n>`` (mapping codes), ``LELCPFX <entries>`` (prefix tables)
and ``LELCXT`` (crosstalk weights). Injection traces hold one cycle per line.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .bits import BitString
from .errors import FormatError, InvalidParameterError
from .mapping import CodebookMap
from .metrics import CrosstalkWeightTable
from .prefixcode import PrefixCodeTable
from .profiler import DatawordHistogram
from .throttle import InjectionTrace

MAGIC = b"LELC"
_HEAD = struct.Struct("<4sBII")
_U32 = struct.Struct("<I")


@dataclass
class TraceFile:
    payloads: list[BitString]
    payload_bits: int
    version: int = 1

    @property
    def variable(self) -> bool:
        return self.version == 2


def _payload_bytes(p: BitString, nbits: int) -> bytes:
    return p.to_bytes().ljust(-(-nbits // 8), b"\0")


def dump_trace(payloads: Sequence[BitString], payload_bits: int | None = None,
               variable: bool = False) -> bytes:
    """Serialize payloads; ``variable`` selects the version-2 layout."""
    if not variable:
        lengths = {len(p) for p in payloads}
        if payload_bits is None:
            payload_bits = lengths.pop() if lengths else 0
            if lengths:
                raise InvalidParameterError("payloads differ in length; use the variable layout")
        elif lengths - {payload_bits}:
            raise InvalidParameterError(f"payloads are not all {payload_bits} bits")
        head = _HEAD.pack(MAGIC, 1, payload_bits, len(payloads))
        return head + b"".join(_payload_bytes(p, payload_bits) for p in payloads)
    if payload_bits is None:
        raise InvalidParameterError("the variable layout needs the source payload_bits")
    head = _HEAD.pack(MAGIC, 2, payload_bits, len(payloads))
    index = b"".join(_U32.pack(len(p)) for p in payloads)
    return head + index + b"".join(p.to_bytes() for p in payloads)


def load_trace(data: bytes) -> TraceFile:
    if len(data) < _HEAD.size:
        raise FormatError("trace file is shorter than its header")
    magic, version, payload_bits, count = _HEAD.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad trace magic {magic!r}")
    pos = _HEAD.size
    if version == 1:
        lengths = [payload_bits] * count
    elif version == 2:
        if len(data) < pos + 4 * count:
            raise FormatError("trace file is missing its length index")
        lengths = [_U32.unpack_from(data, pos + 4 * i)[0] for i in range(count)]
        pos += 4 * count
    else:
        raise FormatError(f"unsupported trace version {version}")
    expected = pos + sum(-(-n // 8) for n in lengths)
    if len(data) != expected:
        raise FormatError(f"trace body is {len(data) - pos} bytes, header implies {expected - pos}")
    payloads = []
    for i, n in enumerate(lengths):
        size = -(-n // 8)
        chunk = data[pos:pos + size]
        pos += size
        if n % 8 and chunk[-1] & ((1 << (8 - n % 8)) - 1):
            raise FormatError(f"payload {i} has non-zero pad bits")
        payloads.append(BitString.from_bytes(chunk, n))
    return TraceFile(payloads, payload_bits, version)


def read_trace(path) -> TraceFile:
    return load_trace(Path(path).read_bytes())


def write_trace(path, payloads: Sequence[BitString], payload_bits: int | None = None,
                variable: bool = False) -> None:
    Path(path).write_bytes(dump_trace(payloads, payload_bits, variable))


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def _header(lines: list[str], magic: str, nargs: int) -> list[int]:
    if not lines:
        raise FormatError(f"empty file, expected {magic} header")
    parts = lines[0].split()
    if parts[0] != magic or len(parts) != nargs + 1:
        raise FormatError(f"expected '{magic}' header with {nargs} field(s), got {lines[0]!r}")
    try:
        return [int(x) for x in parts[1:]]
    except ValueError:
        raise FormatError(f"non-integer field in header {lines[0]!r}") from None


def _bitfield(token: str, width: int | None, where: str) -> str:
    if not token or token.strip("01") or (width is not None and len(token) != width):
        size = f"{width}-bit " if width is not None else ""
        raise FormatError(f"{where}: expected a {size}0/1 string, got {token!r}")
    return token


def dump_histogram(h: DatawordHistogram) -> str:
    out = [f"LELCHIST {h.k}"]
    out += [f"{v:0{h.k}b} {int(c)}" for v, c in enumerate(h.counts) if c]
    return "\n".join(out) + "\n"


def load_histogram(text: str) -> DatawordHistogram:
    lines = _lines(text)
    (k,) = _header(lines, "LELCHIST", 1)
    if not 1 <= k <= 16:
        raise FormatError(f"histogram k={k} out of range")
    counts = np.zeros(1 << k, dtype=np.int64)
    last = -1
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad histogram line {ln!r}")
        value = int(_bitfield(parts[0], k, "histogram"), 2)
        if value <= last:
            raise FormatError("histogram entries must be sorted ascending and unique")
        last = value
        try:
            counts[value] = int(parts[1])
        except ValueError:
            raise FormatError(f"bad count in {ln!r}") from None
        if counts[value] < 0:
            raise FormatError(f"negative count in {ln!r}")
    return DatawordHistogram(k, counts)


def dump_map(m: CodebookMap) -> str:
    return f"LELCMAP {m.k} {m.n}\n" + "".join(f"{c:0{m.n}b}\n" for c in m.table)


def load_map(text: str) -> CodebookMap:
    lines = _lines(text)
    k, n = _header(lines, "LELCMAP", 2)
    if not 1 <= k <= 16 or n < k:
        raise FormatError(f"invalid map geometry k={k}, n={n}")
    body = lines[1:]
    if len(body) != 1 << k:
        raise FormatError(f"map needs {1 << k} codeword lines, found {len(body)}")
    table = [int(_bitfield(ln, n, f"map line {i + 2}"), 2) for i, ln in enumerate(body)]
    try:
        return CodebookMap(k, n, tuple(table))
    except InvalidParameterError as exc:
        raise FormatError(str(exc)) from None


def dump_prefix_table(t: PrefixCodeTable) -> str:
    return f"LELCPFX {len(t)}\n" + "".join(f"{p} {c}\n" for p, c in t.entries)


def load_prefix_table(text: str) -> PrefixCodeTable:
    lines = _lines(text)
    (count,) = _header(lines, "LELCPFX", 1)
    body = lines[1:]
    if len(body) != count:
        raise FormatError(f"header announces {count} entries, found {len(body)}")
    pairs = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad prefix table line {ln!r}")
        pairs.append((_bitfield(parts[0], None, "path"), _bitfield(parts[1], None, "codeword")))
    return PrefixCodeTable.from_pairs(pairs)


def dump_crosstalk_weights(w: CrosstalkWeightTable) -> str:
    return "LELCXT\n" + "".join(f"{c} {getattr(w, c):g}\n" for c in w.CLASSES)


def load_crosstalk_weights(text: str) -> CrosstalkWeightTable:
    """Unlisted classes keep their default weight."""
    lines = _lines(text)
    if not lines or lines[0] != "LELCXT":
        raise FormatError("expected 'LELCXT' header")
    values = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or parts[0] not in CrosstalkWeightTable.CLASSES:
            raise FormatError(f"bad crosstalk weight line {ln!r}")
        try:
            values[parts[0]] = float(parts[1])
        except ValueError:
            raise FormatError(f"bad weight in {ln!r}") from None
    try:
        return CrosstalkWeightTable(**values)
    except InvalidParameterError as exc:
        raise FormatError(str(exc)) from None


def dump_injections(trace: InjectionTrace) -> str:
    return "".join(f"{c}\n" for c in trace.cycles)


def load_injections(text: str) -> InjectionTrace:
    try:
        cycles = tuple(int(ln) for ln in _lines(text) if not ln.startswith("#"))
    except ValueError as exc:
        raise FormatError(f"bad injection cycle: {exc}") from None
    try:
        return InjectionTrace(cycles)
    except InvalidParameterError as exc:
        raise FormatError(str(exc)) from None


def _reader(loader):
    def read(path):
        return loader(Path(path).read_text())
    read.__name__ = loader.__name__.replace("load_", "read_")
    return read


def _writer(dumper):
    def write(path, obj):
        Path(path).write_text(dumper(obj))
    write.__name__ = dumper.__name__.replace("dump_", "write_")
    return write


read_histogram = _reader(load_histogram)
read_map = _reader(load_map)
read_prefix_table = _reader(load_prefix_table)
read_crosstalk_weights = _reader(load_crosstalk_weights)
read_injections = _reader(load_injections)
write_histogram = _writer(dump_histogram)
write_map = _writer(dump_map)
write_prefix_table = _writer(dump_prefix_table)
write_crosstalk_weights = _writer(dump_crosstalk_weights)
write_injections = _writer(dump_injections)
