"""Rate, energy, flit and crosstalk measurements over payload traces.

Only data payloads are coded and measured; header flits appear in the flit
counts but never in the energy or crosstalk totals. Coded payloads are
zero-padded to whole flits before they reach the wires, and wire state
carries over from one payload to the next.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .bits import BitString, evolve_matrix
from .errors import FramingError, InvalidParameterError, LelcError


@dataclass(frozen=True)
class LinkConfig:
    flit_bits: int = 128
    payload_bits: int = 512
    grid_rows: int = 8
    grid_cols: int = 16
    header_flits: int = 1

    def __post_init__(self):
        if min(self.flit_bits, self.payload_bits, self.grid_rows, self.grid_cols) < 1:
            raise InvalidParameterError("link dimensions must be positive")
        if self.header_flits < 0:
            raise InvalidParameterError("header_flits must be >= 0")
        if self.grid_rows * self.grid_cols != self.flit_bits:
            raise InvalidParameterError(
                f"grid {self.grid_rows}x{self.grid_cols} does not hold {self.flit_bits} wires")


DEFAULT_LINK = LinkConfig()


def flit_count(coded_bits: int, link: LinkConfig = DEFAULT_LINK) -> int:
    """Header flits plus the data flits needed for ``coded_bits``."""
    if coded_bits < 0:
        raise InvalidParameterError("coded_bits must be >= 0")
    return link.header_flits + -(-coded_bits // link.flit_bits)


def data_flits(coded_bits: int, link: LinkConfig = DEFAULT_LINK) -> int:
    return flit_count(coded_bits, link) - link.header_flits


class CodecMismatch(LelcError):
    """A codec failed its own round trip on a payload."""


@dataclass(frozen=True)
class EnergyReport:
    payloads: int
    dataword_bits: int
    codeword_bits: int
    ones_raw: int
    ones_coded: int
    flits_uncoded: int
    flits_coded: int

    @property
    def rate(self) -> float | None:
        if self.codeword_bits == 0:
            return None
        return self.dataword_bits / self.codeword_bits

    @property
    def reduction_pct(self) -> float | None:
        if self.ones_raw == 0:
            return None
        return 100.0 * (1.0 - self.ones_coded / self.ones_raw)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["rate"] = self.rate
        d["reduction_pct"] = self.reduction_pct
        return d


def _check_payload(i: int, payload: BitString, link: LinkConfig) -> None:
    if len(payload) != link.payload_bits:
        raise FramingError(
            f"payload {i} has {len(payload)} bits, link expects {link.payload_bits}")


def encode_trace(trace: Sequence[BitString], codec, verify: bool = True) -> list[BitString]:
    """Encode every payload; with ``verify`` also decode and compare."""
    out = []
    for i, payload in enumerate(trace):
        try:
            coded = codec.encode(payload)
            if verify and codec.decode(coded, len(payload)) != payload:
                raise CodecMismatch(f"{codec.name} does not round-trip")
        except LelcError as exc:
            with_payload_index(exc, i)
            raise
        out.append(coded)
    return out


def with_payload_index(exc: LelcError, i: int) -> LelcError:
    exc.args = (f"payload {i}: {exc}",) + exc.args[1:]
    exc.payload_index = i
    return exc


def energy_report(trace: Sequence[BitString], codec, link: LinkConfig | None = None,
                  verify: bool = True) -> EnergyReport:
    """Aggregate rate and 1s counts of ``codec`` over all payloads of ``trace``."""
    return _energy(trace, encode_trace(trace, codec, verify), link or DEFAULT_LINK)


def _energy(trace, coded, link) -> EnergyReport:
    return EnergyReport(
        payloads=len(trace),
        dataword_bits=sum(len(p) for p in trace),
        codeword_bits=sum(len(c) for c in coded),
        ones_raw=sum(p.weight() for p in trace),
        ones_coded=sum(c.weight() for c in coded),
        flits_uncoded=sum(flit_count(len(p), link) for p in trace),
        flits_coded=sum(flit_count(len(c), link) for c in coded),
    )


def flitize(payloads: Sequence[BitString], link: LinkConfig = DEFAULT_LINK) -> np.ndarray:
    """Data flits of all payloads as a ``(steps, flit_bits)`` 0/1 array."""
    w = link.flit_bits
    stream = "".join(p.bits + "0" * (-len(p) % w) for p in payloads)
    arr = np.frombuffer(stream.encode("ascii"), dtype=np.uint8) - ord("0")
    return arr.reshape(-1, w)


@dataclass(frozen=True)
class CrosstalkWeightTable:
    """Coupling cost of one victim/neighbor pair per time step.

    ``victim_only``: victim switches while the neighbor is idle.
    ``neighbor_only``: victim idle while the neighbor switches.
    """

    same_direction: float = 0.0
    victim_only: float = 1.0
    opposite_direction: float = 2.0
    neighbor_only: float = 1.0
    both_idle: float = 0.0

    CLASSES = ("same_direction", "victim_only", "opposite_direction",
               "neighbor_only", "both_idle")

    def __post_init__(self):
        values = [getattr(self, c) for c in self.CLASSES]
        if any(v < 0 for v in values):
            raise InvalidParameterError("crosstalk weights must be non-negative")
        if self.both_idle > min(values):
            raise InvalidParameterError("the all-idle pattern must have the lowest weight")

    def matrix(self) -> np.ndarray:
        """Weight indexed by ``[victim + 1, neighbor + 1]``; column 3 is off-grid."""
        m = np.zeros((3, 4))
        m[1, 1] = self.both_idle
        m[1, 0] = m[1, 2] = self.neighbor_only
        m[0, 1] = m[2, 1] = self.victim_only
        m[0, 0] = m[2, 2] = self.same_direction
        m[0, 2] = m[2, 0] = self.opposite_direction
        return m


_OFF_GRID = 2


def crosstalk_units(transitions: np.ndarray, weights: CrosstalkWeightTable
                    ) -> tuple[float, dict[tuple[int, int, int, int], int]]:
    """Crosstalk of a ``(steps, rows, cols)`` array of -1/0/+1 transitions.

    Every wire is a victim at every step; its up, down, left and right
    neighbors contribute per ``weights``. Off-grid positions contribute
    nothing. The histogram key is ``(victim switching, same-direction,
    opposite-direction, idle)`` neighbor counts; for an idle victim the
    switching neighbors are the in-grid ones not counted as idle.
    """
    tr = transitions.astype(np.int8)
    steps = tr.shape[0]
    if steps == 0:
        return 0.0, {}
    padded = np.pad(tr, ((0, 0), (1, 1), (1, 1)), constant_values=_OFF_GRID)
    neighbors = (padded[:, :-2, 1:-1], padded[:, 2:, 1:-1],
                 padded[:, 1:-1, :-2], padded[:, 1:-1, 2:])
    table = weights.matrix()
    vi = tr + 1
    total = 0.0
    moving = tr != 0
    same = np.zeros(tr.shape, dtype=np.int64)
    opp = np.zeros(tr.shape, dtype=np.int64)
    idle = np.zeros(tr.shape, dtype=np.int64)
    for nb in neighbors:
        ni = np.where(nb == _OFF_GRID, 3, nb + 1)
        total += float(table[vi, ni].sum())
        same += moving & (nb == tr)
        opp += moving & (nb == -tr)
        idle += nb == 0
    keys = moving * 1000 + same * 100 + opp * 10 + idle
    values, counts = np.unique(keys, return_counts=True)
    hist = {(int(v) // 1000, int(v) // 100 % 10, int(v) // 10 % 10, int(v) % 10): int(c)
            for v, c in zip(values, counts)}
    return total, hist


def stream_crosstalk(payloads: Sequence[BitString], link: LinkConfig,
                     weights: CrosstalkWeightTable):
    sent = flitize(payloads, link)
    timeline = evolve_matrix(sent)
    grid = timeline.transitions.T.reshape(-1, link.grid_rows, link.grid_cols)
    return crosstalk_units(grid, weights)


@dataclass(frozen=True)
class CrosstalkReport:
    total_coded: float
    total_uncoded: float
    histogram_coded: dict = field(default_factory=dict)
    histogram_uncoded: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float | None:
        if self.total_uncoded == 0:
            return None
        return self.total_coded / self.total_uncoded


def crosstalk_report(trace: Sequence[BitString], codec, link: LinkConfig | None = None,
                     weights: CrosstalkWeightTable | None = None,
                     coded: Sequence[BitString] | None = None) -> CrosstalkReport:
    link = link or DEFAULT_LINK
    weights = weights or CrosstalkWeightTable()
    for i, p in enumerate(trace):
        _check_payload(i, p, link)
    if coded is None:
        coded = encode_trace(trace, codec)
    tc, hc = stream_crosstalk(coded, link, weights)
    tu, hu = stream_crosstalk(trace, link, weights)
    return CrosstalkReport(tc, tu, hc, hu)


def format_value(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "n/a"
    if isinstance(v, float):
        return format(v, ".10g")
    return str(v)


def format_report(items: dict) -> str:
    """``key=value`` lines in insertion order."""
    return "".join(f"{k}={format_value(v)}\n" for k, v in items.items())


def analysis(trace: Sequence[BitString], codec, link: LinkConfig | None = None,
             weights: CrosstalkWeightTable | None = None) -> dict:
    """Energy, rate, flit and crosstalk figures as an ordered dict."""
    link = link or DEFAULT_LINK
    coded = encode_trace(trace, codec)
    e = _energy(trace, coded, link)
    x = crosstalk_report(trace, codec, link, weights, coded=coded)
    out = {"codec": codec.name, "payloads": e.payloads}
    out.update({k: v for k, v in e.as_dict().items() if k != "payloads"})
    out["xtalk_coded"] = x.total_coded
    out["xtalk_uncoded"] = x.total_uncoded
    out["xtalk_ratio"] = x.ratio
    return out

