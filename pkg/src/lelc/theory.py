"""Information-theoretic limits of line coding for equiprobable input.

A code whose codeword bits are 1 with probability ``f`` can reach at most
rate ``H(f)``. Energy per dataword bit relative to uncoded data (where half
the bits are 1) is then ``2f / H(f)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError

INVERSE_TOL = 1e-9


def _check_unit(x: float, name: str) -> None:
    if not (0.0 <= x <= 1.0):
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {x}")


def binary_entropy(f: float) -> float:
    """H(f) in bits; defined as 0 at f = 0 and f = 1."""
    _check_unit(f, "f")
    if f == 0.0 or f == 1.0:
        return 0.0
    return -f * math.log2(f) - (1.0 - f) * math.log2(1.0 - f)


def inverse_entropy(rate: float, tol: float = INVERSE_TOL) -> float:
    """The f in [0, 0.5] with H(f) = rate, by bisection."""
    _check_unit(rate, "rate")
    lo, hi = 0.0, 0.5
    if rate == 0.0:
        return 0.0
    if rate == 1.0:
        return 0.5
    # H is increasing on [0, 0.5]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < rate:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def energy_reduction_pct(f: float, rate: float) -> float:
    """Percent fewer 1s per dataword bit than uncoded data."""
    if rate <= 0.0:
        raise InvalidParameterError("rate must be positive")
    return 100.0 * (1.0 - 2.0 * f / rate)


@dataclass(frozen=True)
class TradeoffPoint:
    ones_fraction: float
    rate: float
    energy_reduction_pct: float


def tradeoff_point(f: float) -> TradeoffPoint:
    r = binary_entropy(f)
    return TradeoffPoint(f, r, energy_reduction_pct(f, r))


def tradeoff_at_rate(rate: float) -> TradeoffPoint:
    f = inverse_entropy(rate)
    return TradeoffPoint(f, rate, energy_reduction_pct(f, rate))


def tradeoff_curve(sample_count: int) -> list[TradeoffPoint]:
    """Optimal rate/energy curve sampled at f = 0.5*i/n for i = 1..n."""
    if sample_count < 2:
        raise InvalidParameterError("sample_count must be >= 2")
    return [tradeoff_point(0.5 * i / sample_count) for i in range(1, sample_count + 1)]


def compression_vs_coding(rate: float, n_bits: float) -> tuple[float, float]:
    """Expected 1s sent for an N-bit file reduced to information rate R.

    Returns ``(ones_compression, ones_coding)``: perfect compression sends
    N*R equiprobable bits, an ideal line code sends N bits at density H^-1(R).
    """
    if not (0.0 < rate <= 1.0):
        raise InvalidParameterError(f"rate must lie in (0, 1], got {rate}")
    if n_bits <= 0:
        raise InvalidParameterError(f"N must be positive, got {n_bits}")
    return n_bits * rate / 2.0, inverse_entropy(rate) * n_bits
