"""Dataword histograms of payload traces and seeded synthetic traces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bits import BitString
from .errors import InvalidParameterError, MalformedTraceError

MAX_K = 16


@dataclass(frozen=True)
class DatawordHistogram:
    k: int
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if not (1 <= self.k <= MAX_K):
            raise InvalidParameterError(f"k must be in [1, {MAX_K}], got {self.k}")
        if counts.shape != (1 << self.k,):
            raise InvalidParameterError(
                f"histogram for k={self.k} needs {1 << self.k} counts, got {counts.shape}")
        if (counts < 0).any():
            raise InvalidParameterError("negative count in histogram")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def probabilities(self) -> np.ndarray:
        total = self.total
        if total == 0:
            raise InvalidParameterError("histogram is empty")
        return self.counts / total

    def __add__(self, other: "DatawordHistogram") -> "DatawordHistogram":
        if other.k != self.k:
            raise InvalidParameterError("cannot merge histograms of different k")
        return DatawordHistogram(self.k, self.counts + other.counts)

    def __eq__(self, other):
        if not isinstance(other, DatawordHistogram):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.counts, other.counts)

    def __hash__(self):
        return hash((self.k, self.counts.tobytes()))

    @classmethod
    def from_dict(cls, k: int, counts: dict[int, int]) -> "DatawordHistogram":
        arr = np.zeros(1 << k, dtype=np.int64)
        for value, c in counts.items():
            arr[value] = c
        return cls(k, arr)


def dataword_values(payload: BitString, k: int) -> np.ndarray:
    """Integer value of each k-bit dataword in ``payload``, in order."""
    arr = payload.to_array().reshape(-1, k).astype(np.int64)
    return arr @ (1 << np.arange(k - 1, -1, -1, dtype=np.int64))


def profile(trace: Sequence[BitString], k: int) -> DatawordHistogram:
    """Count every k-bit dataword of every payload."""
    if not (1 <= k <= MAX_K):
        raise InvalidParameterError(f"k must be in [1, {MAX_K}], got {k}")
    counts = np.zeros(1 << k, dtype=np.int64)
    for i, payload in enumerate(trace):
        if len(payload) % k:
            raise MalformedTraceError(
                f"length {len(payload)} is not a multiple of k={k}", index=i)
        if len(payload):
            counts += np.bincount(dataword_values(payload, k), minlength=1 << k)
    return DatawordHistogram(k, counts)


def synthesize_trace(h: DatawordHistogram, payload_count: int, payload_bits: int,
                     seed: int) -> list[BitString]:
    """Payloads of i.i.d. datawords drawn from ``h``'s empirical distribution."""
    if h.total == 0:
        raise InvalidParameterError("cannot sample from an empty histogram")
    if payload_bits % h.k:
        raise InvalidParameterError(
            f"payload_bits={payload_bits} is not a multiple of k={h.k}")
    if payload_count < 0:
        raise InvalidParameterError("payload_count must be >= 0")
    words_per = payload_bits // h.k
    rng = np.random.default_rng(seed)
    values = rng.choice(1 << h.k, size=(payload_count, words_per), p=h.probabilities())
    fmt = f"0{h.k}b"
    words = [format(v, fmt) for v in range(1 << h.k)]
    return [BitString._raw("".join(words[v] for v in row)) for row in values.tolist()]


def frequency_order(h: DatawordHistogram) -> list[int]:
    """Dataword values by descending count, ties by ascending value."""
    # stable sort on negated counts keeps equal counts in ascending value order
    return np.argsort(-h.counts, kind="stable").tolist()


def zero_dominated_histogram(k: int = 8, p_zero: float = 0.5,
                             p_ones: float = 0.1, scale: int = 1 << 20) -> DatawordHistogram:
    """All-0 dataword most common, all-1 next, everything else uniform."""
    if p_zero + p_ones > 1.0:
        raise InvalidParameterError("p_zero + p_ones must not exceed 1")
    n = 1 << k
    probs = np.full(n, (1.0 - p_zero - p_ones) / (n - 2))
    probs[0] = p_zero
    probs[n - 1] = p_ones
    return DatawordHistogram(k, np.rint(probs * scale).astype(np.int64))
