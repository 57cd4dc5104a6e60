"""Lookup-table mapping codes generated from dataword profiles.

The most frequent k-bit datawords receive the lightest n-bit codewords.
Candidate codewords are ranked by (weight, value). The weight-monotone
variant never gives a dataword a codeword with more 1s than itself and uses
a Hall-condition check so that greedy choices never strand a later dataword.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bits import BitString
from .errors import DecodeError, FramingError, InvalidParameterError
from .profiler import MAX_K, DatawordHistogram, frequency_order


@dataclass(frozen=True)
class CodebookMap:
    """``table[d]`` is the codeword value for dataword value ``d``."""

    k: int
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(c) for c in self.table)
        object.__setattr__(self, "table", table)
        if not (1 <= self.k <= MAX_K):
            raise InvalidParameterError(f"k must be in [1, {MAX_K}], got {self.k}")
        if self.n < self.k:
            raise InvalidParameterError(f"n={self.n} must be >= k={self.k}")
        if len(table) != 1 << self.k:
            raise InvalidParameterError(f"map needs {1 << self.k} entries, got {len(table)}")
        if any(c < 0 or c >> self.n for c in table):
            raise InvalidParameterError(f"codeword does not fit in {self.n} bits")
        if len(set(table)) != len(table):
            raise InvalidParameterError("codewords are not distinct")
        fk, fn = f"0{self.k}b", f"0{self.n}b"
        object.__setattr__(self, "_enc", {format(d, fk): format(c, fn)
                                          for d, c in enumerate(table)})
        object.__setattr__(self, "_dec", {v: d for d, v in self._enc.items()})

    @property
    def rate(self) -> float:
        return self.k / self.n

    def codeword(self, dataword: int) -> BitString:
        return BitString.from_int(self.table[dataword], self.n)

    def weight_increases(self) -> list[int]:
        """Datawords whose codeword carries more 1s than they do."""
        return [d for d, c in enumerate(self.table)
                if bin(c).count("1") > bin(d).count("1")]

    def is_weight_monotone(self) -> bool:
        return not self.weight_increases()

    def weight_delta(self) -> np.ndarray:
        """weight(codeword) - weight(dataword), per dataword value."""
        wd = np.array([bin(d).count("1") for d in range(1 << self.k)])
        wc = np.array([bin(c).count("1") for c in self.table])
        return wc - wd


def codeword_order(n: int) -> list[int]:
    """All n-bit values sorted by (weight, value)."""
    return sorted(range(1 << n), key=lambda v: (bin(v).count("1"), v))


def _popcounts(limit: int) -> np.ndarray:
    return np.array([bin(v).count("1") for v in range(limit)], dtype=np.int64)


def mapgen(h: DatawordHistogram, n: int, weight_monotone: bool = False) -> CodebookMap:
    k = h.k
    if n < k:
        raise InvalidParameterError(f"n={n} must be >= k={k}")
    if weight_monotone and n == k:
        raise InvalidParameterError("a weight-monotone map needs n >= k + 1")
    if n > 24:
        raise InvalidParameterError(f"n={n} is too large for a lookup table")
    order = frequency_order(h)
    candidates = codeword_order(n)
    table = [0] * (1 << k)
    if not weight_monotone:
        for d, c in zip(order, candidates):
            table[d] = c
        return CodebookMap(k, n, tuple(table))

    # free_cw[w] / open_dw[w]: unused codewords / unassigned datawords of weight w
    cw_weight = _popcounts(1 << n)
    dw_weight = _popcounts(1 << k)
    free_cw = np.bincount(cw_weight, minlength=n + 1)
    open_dw = np.bincount(dw_weight, minlength=n + 1)
    used = np.zeros(1 << n, dtype=bool)
    by_weight = [[c for c in candidates if cw_weight[c] == w] for w in range(n + 1)]
    cursor = [0] * (n + 1)

    def feasible() -> bool:
        return bool((np.cumsum(free_cw) >= np.cumsum(open_dw)).all())

    for d in order:
        wd = int(dw_weight[d])
        open_dw[wd] -= 1
        chosen = None
        for w in range(wd + 1):
            group = by_weight[w]
            while cursor[w] < len(group) and used[group[cursor[w]]]:
                cursor[w] += 1
            if cursor[w] == len(group):
                continue
            free_cw[w] -= 1
            if feasible():
                chosen = group[cursor[w]]
                break
            free_cw[w] += 1
        if chosen is None:
            raise RuntimeError(f"no feasible codeword for dataword {d} (k={k}, n={n})")
        used[chosen] = True
        table[d] = chosen
    return CodebookMap(k, n, tuple(table))


def map_encode(payload: BitString, m: CodebookMap) -> BitString:
    s = payload.bits
    k = m.k
    if len(s) % k:
        raise FramingError(f"payload length {len(s)} is not a multiple of k={k}")
    enc = m._enc
    return BitString._raw("".join(enc[s[i:i + k]] for i in range(0, len(s), k)))


def map_decode(coded: BitString, m: CodebookMap) -> BitString:
    s = coded.bits
    n = m.n
    if len(s) % n:
        raise FramingError(f"coded length {len(s)} is not a multiple of n={n}")
    dec = m._dec
    out = []
    for i in range(0, len(s), n):
        d = dec.get(s[i:i + n])
        if d is None:
            raise DecodeError(f"codeword {s[i:i + n]} is not in the map", offset=i)
        out.append(d)
    return BitString._raw("".join(out))


def cross_evaluate(maps: Sequence[CodebookMap],
                   traces: Sequence[Sequence[BitString]]) -> np.ndarray:
    """Energy reduction (%) of map j on trace i, as a ``(traces, maps)`` array.

    Entries are NaN for traces that carry no 1s.
    """
    from .metrics import energy_report
    from .codecs import MapCodec

    if maps:
        shape = {(m.k, m.n) for m in maps}
        if len(shape) != 1:
            raise InvalidParameterError("all maps must share k and n")
    out = np.full((len(traces), len(maps)), np.nan)
    for i, trace in enumerate(traces):
        for j, m in enumerate(maps):
            r = energy_report(trace, MapCodec(m))
            if r.reduction_pct is not None:
                out[i, j] = r.reduction_pct
    return out
