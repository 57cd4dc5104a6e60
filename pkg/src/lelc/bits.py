"""Bit strings, weight, chunking and NRZI wire-state evolution.

A :class:`BitString` is an immutable sequence of bits. Index 0 is the first
bit on the wire; when converting to and from bytes the most significant bit
of each byte comes first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameterError

_STRIP01 = {ord("0"): None, ord("1"): None}


class BitString:
    """Immutable ordered bit sequence backed by a ``'0'``/``'1'`` string."""

    __slots__ = ("_bits",)

    def __init__(self, bits: str | Iterable[int] = ""):
        if not isinstance(bits, str):
            bits = "".join("1" if b else "0" for b in bits)
        elif bits.translate(_STRIP01):
            raise InvalidParameterError(f"not a bit string: {bits[:32]!r}")
        self._bits = bits

    @classmethod
    def _raw(cls, bits: str) -> "BitString":
        # caller guarantees bits only holds '0'/'1'
        obj = cls.__new__(cls)
        obj._bits = bits
        return obj

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls._raw("0" * n)

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitString":
        if value < 0 or (width < value.bit_length()):
            raise InvalidParameterError(f"{value} does not fit in {width} bits")
        return cls._raw(format(value, f"0{width}b") if width else "")

    @classmethod
    def from_bytes(cls, data: bytes, nbits: int | None = None) -> "BitString":
        s = "".join(format(b, "08b") for b in data)
        if nbits is not None:
            if nbits > len(s):
                raise InvalidParameterError(f"{nbits} bits requested from {len(data)} bytes")
            s = s[:nbits]
        return cls._raw(s)

    @property
    def bits(self) -> str:
        return self._bits

    def to_int(self) -> int:
        return int(self._bits, 2) if self._bits else 0

    def to_bytes(self) -> bytes:
        n = len(self._bits)
        if n == 0:
            return b""
        padded = self._bits + "0" * (-n % 8)
        return int(padded, 2).to_bytes(len(padded) // 8, "big")

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self._bits.encode("ascii"), dtype=np.uint8) - ord("0")

    def weight(self) -> int:
        return self._bits.count("1")

    def __len__(self) -> int:
        return len(self._bits)

    def __iter__(self):
        return (int(c) for c in self._bits)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return BitString._raw(self._bits[idx])
        return int(self._bits[idx])

    def __add__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString._raw(self._bits + other._bits)

    def __invert__(self) -> "BitString":
        return BitString._raw(self._bits.translate(_COMPLEMENT))

    def __eq__(self, other) -> bool:
        if isinstance(other, BitString):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("BitString", self._bits))

    def __repr__(self) -> str:
        if len(self._bits) > 48:
            return f"BitString('{self._bits[:48]}...', len={len(self._bits)})"
        return f"BitString('{self._bits}')"

    def __str__(self) -> str:
        return self._bits


_COMPLEMENT = str.maketrans("01", "10")


def complement(bits: str) -> str:
    return bits.translate(_COMPLEMENT)


def concat(parts: Iterable[BitString]) -> BitString:
    return BitString._raw("".join(p.bits for p in parts))


def weight(b: BitString) -> int:
    """Number of 1 bits in ``b``."""
    return b.weight()


def chunk(b: BitString, k: int) -> tuple[list[BitString], BitString]:
    """Split ``b`` into k-bit pieces plus a remainder shorter than k."""
    if k < 1:
        raise InvalidParameterError(f"chunk size must be >= 1, got {k}")
    s = b.bits
    full = len(s) - len(s) % k
    chunks = [BitString._raw(s[i:i + k]) for i in range(0, full, k)]
    return chunks, BitString._raw(s[full:])


LOW, HIGH = 0, 1
IDLE, RISE, FALL = 0, 1, -1


@dataclass(frozen=True)
class WireStateTimeline:
    """Per-wire voltage levels and transitions over a sequence of flits.

    ``states`` has shape ``(wire_count, steps + 1)`` and includes the initial
    level in column 0. ``transitions`` has shape ``(wire_count, steps)`` with
    entries ``IDLE`` (0), ``RISE`` (+1) or ``FALL`` (-1).
    """

    wire_count: int
    states: np.ndarray
    transitions: np.ndarray

    @property
    def steps(self) -> int:
        return self.transitions.shape[1]

    def transition_count(self) -> int:
        return int(np.count_nonzero(self.transitions))


def flit_matrix(flits: Sequence[BitString], wire_count: int) -> np.ndarray:
    """Stack flits into a ``(steps, wire_count)`` uint8 array."""
    for i, f in enumerate(flits):
        if len(f) != wire_count:
            raise InvalidParameterError(
                f"flit {i} has {len(f)} bits, link has {wire_count} wires")
    if not flits:
        return np.zeros((0, wire_count), dtype=np.uint8)
    joined = "".join(f.bits for f in flits)
    arr = np.frombuffer(joined.encode("ascii"), dtype=np.uint8) - ord("0")
    return arr.reshape(len(flits), wire_count)


def evolve_matrix(sent: np.ndarray, initial_state=LOW) -> WireStateTimeline:
    """NRZI evolution of a ``(steps, wires)`` 0/1 matrix."""
    steps, wires = sent.shape
    init = np.broadcast_to(np.asarray(initial_state, dtype=np.uint8), (wires,))
    levels = np.empty((wires, steps + 1), dtype=np.uint8)
    levels[:, 0] = init
    if steps:
        levels[:, 1:] = (np.cumsum(sent.T, axis=1, dtype=np.int64) + init[:, None]) & 1
    # a toggle out of LOW rises, out of HIGH falls
    before = levels[:, :-1].astype(np.int8)
    toggled = sent.T.astype(np.int8)
    transitions = toggled * (1 - 2 * before)
    return WireStateTimeline(wires, levels, transitions)


def nrzi_evolve(flits: Sequence[BitString], wire_count: int,
                initial_state=LOW) -> WireStateTimeline:
    """Drive ``wire_count`` wires with NRZI: each 1 bit toggles its wire."""
    return evolve_matrix(flit_matrix(flits, wire_count), initial_state)
