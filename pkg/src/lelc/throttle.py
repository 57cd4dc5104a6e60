"""Windowed code throttling on a single FIFO link.

Packets are serialized one flit per cycle. At the end of every window the
link compares its utilization with a threshold: above it, the next window
sends packets uncoded (fewer flits), otherwise coded. A packet keeps the mode
of the window it was injected in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameterError

CODED, UNCODED = "coded", "uncoded"


@dataclass(frozen=True)
class ThrottleConfig:
    window_cycles: int = 100_000
    threshold: float = 0.165
    flits_coded: int = 5
    flits_uncoded: int = 4
    header_flits: int = 1

    def __post_init__(self):
        if self.window_cycles < 1:
            raise InvalidParameterError("window_cycles must be >= 1")
        if not (0.0 <= self.threshold <= 1.0):
            raise InvalidParameterError(f"threshold must lie in [0, 1], got {self.threshold}")
        if self.flits_uncoded < 1 or self.flits_coded < self.flits_uncoded:
            raise InvalidParameterError("need flits_coded >= flits_uncoded >= 1")
        if self.header_flits < 0:
            raise InvalidParameterError("header_flits must be >= 0")

    def packet_cycles(self, mode: str) -> int:
        return self.header_flits + (self.flits_coded if mode == CODED else self.flits_uncoded)


@dataclass(frozen=True)
class InjectionTrace:
    cycles: tuple[int, ...]

    def __post_init__(self):
        cycles = tuple(int(c) for c in self.cycles)
        if any(c < 0 for c in cycles):
            raise InvalidParameterError("injection cycles must be >= 0")
        if any(b < a for a, b in zip(cycles, cycles[1:])):
            raise InvalidParameterError("injection trace is not sorted by cycle")
        object.__setattr__(self, "cycles", cycles)

    def __len__(self):
        return len(self.cycles)


@dataclass(frozen=True)
class ThrottleReport:
    total_cycles: int
    modes: tuple[str, ...]
    utilizations: tuple[float, ...]
    busy_cycles: int
    packets_coded: int
    packets_uncoded: int
    threshold: float = field(default=0.0)

    @property
    def windows(self) -> int:
        return len(self.modes)

    @property
    def coded_windows(self) -> int:
        return self.modes.count(CODED)

    @property
    def uncoded_windows(self) -> int:
        return self.modes.count(UNCODED)

    @property
    def pct_coded(self) -> float:
        return 100.0 * self.coded_windows / self.windows

    @property
    def pct_uncoded(self) -> float:
        return 100.0 * self.uncoded_windows / self.windows


def simulate(trace: InjectionTrace | Iterable[int], cfg: ThrottleConfig) -> ThrottleReport:
    if not isinstance(trace, InjectionTrace):
        trace = InjectionTrace(tuple(trace))
    w = cfg.window_cycles
    threshold = cfg.threshold
    cost = {CODED: cfg.packet_cycles(CODED), UNCODED: cfg.packet_cycles(UNCODED)}
    busy: list[int] = [0]
    modes: list[str] = [CODED]
    counts = {CODED: 0, UNCODED: 0}
    link_free = 0
    for cycle in trace.cycles:
        idx = cycle // w
        # window idx-1 is final once a packet is injected in window idx
        while len(modes) <= idx:
            prev = len(modes) - 1
            util = (busy[prev] if prev < len(busy) else 0) / w
            modes.append(UNCODED if util > threshold else CODED)
        mode = modes[idx]
        counts[mode] += 1
        start = cycle if cycle > link_free else link_free
        link_free = start + cost[mode]
        while start < link_free:
            b = start // w
            stop = min(link_free, (b + 1) * w)
            if b >= len(busy):
                busy.extend([0] * (b + 1 - len(busy)))
            busy[b] += stop - start
            start = stop

    last = max(link_free, trace.cycles[-1] + 1 if trace.cycles else 0)
    n_windows = max(1, -(-last // w))
    busy.extend([0] * (n_windows - len(busy)))
    while len(modes) < n_windows:
        util = busy[len(modes) - 1] / w
        modes.append(UNCODED if util > threshold else CODED)
    return ThrottleReport(
        total_cycles=link_free,
        modes=tuple(modes[:n_windows]),
        utilizations=tuple(b / w for b in busy[:n_windows]),
        busy_cycles=sum(busy),
        packets_coded=counts[CODED],
        packets_uncoded=counts[UNCODED],
        threshold=threshold,
    )


@dataclass(frozen=True)
class SweepRow:
    threshold: float
    pct_coded: float
    pct_uncoded: float
    total_cycles: int


def threshold_sweep(trace: InjectionTrace | Iterable[int], cfg: ThrottleConfig,
                    thresholds: Sequence[float]) -> list[SweepRow]:
    if not isinstance(trace, InjectionTrace):
        trace = InjectionTrace(tuple(trace))
    rows = []
    for t in thresholds:
        r = simulate(trace, ThrottleConfig(cfg.window_cycles, t, cfg.flits_coded,
                                           cfg.flits_uncoded, cfg.header_flits))
        rows.append(SweepRow(t, r.pct_coded, r.pct_uncoded, r.total_cycles))
    return rows


def poisson_injections(rate: float, horizon: int, seed: int) -> InjectionTrace:
    """Packet arrivals at ``rate`` packets per cycle over ``horizon`` cycles."""
    if rate < 0 or horizon < 0:
        raise InvalidParameterError("rate and horizon must be non-negative")
    rng = np.random.default_rng(seed)
    n = rng.poisson(rate * horizon)
    return InjectionTrace(tuple(np.sort(rng.integers(0, max(horizon, 1), size=n)).tolist()))
