import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lelc.bits import BitString
from lelc.errors import DecodeError, FramingError, InvalidParameterError
from lelc.mapping import (CodebookMap, codeword_order, cross_evaluate, map_decode,
                          map_encode, mapgen)
from lelc.profiler import DatawordHistogram, synthesize_trace, zero_dominated_histogram

RATE1_ORDER = [0b000, 0b111, 0b100, 0b001, 0b010, 0b110, 0b011, 0b101]
MONO_ORDER = [0b000, 0b111, 0b100, 0b001, 0b110, 0b010, 0b011, 0b101]
RATE1_TABLE = {"000": "000", "111": "001", "100": "010", "001": "100",
            "010": "011", "110": "101", "011": "110", "101": "111"}
MONO_TABLE = {"000": "0000", "111": "0001", "100": "0010", "001": "0100",
            "110": "0011", "010": "1000", "011": "0101", "101": "0110"}


def ranked(order, k=3):
    counts = np.zeros(1 << k, int)
    for rank, v in enumerate(order):
        counts[v] = len(order) - rank
    return DatawordHistogram(k, counts)


def as_dict(m):
    return {format(d, f"0{m.k}b"): format(c, f"0{m.n}b") for d, c in enumerate(m.table)}


def test_rate_one_example():
    m = mapgen(ranked(RATE1_ORDER), 3)
    assert as_dict(m) == RATE1_TABLE
    assert m.rate == 1


def test_constrained_example():
    m = mapgen(ranked(MONO_ORDER), 4, weight_monotone=True)
    assert as_dict(m) == MONO_TABLE
    assert m.is_weight_monotone()
    assert m.rate == 3 / 4


def test_hall_check_is_what_forces_110():
    # without the lookahead, 110 would take 1000 and leave 010 nothing of weight <= 1
    m = mapgen(ranked(MONO_ORDER), 4, weight_monotone=True)
    assert m.table[0b110] == 0b0011 and m.table[0b010] == 0b1000


def test_uniform_identity():
    m = mapgen(DatawordHistogram(2, [1, 1, 1, 1]), 2)
    assert m.table == (0, 1, 2, 3)


def test_constraint_needs_redundancy():
    with pytest.raises(InvalidParameterError):
        mapgen(DatawordHistogram(2, [1, 1, 1, 1]), 2, weight_monotone=True)
    with pytest.raises(InvalidParameterError):
        mapgen(DatawordHistogram(3, [1] * 8), 2)


def test_codeword_order():
    assert codeword_order(3) == [0, 1, 2, 4, 3, 5, 6, 7]


def test_encode_decode_examples():
    m1a = mapgen(ranked(RATE1_ORDER), 3)
    m1b = mapgen(ranked(MONO_ORDER), 4, weight_monotone=True)
    assert map_encode(BitString("101"), m1a).bits == "111"
    assert map_decode(BitString("111"), m1a).bits == "101"
    assert map_encode(BitString("110"), m1b).bits == "0011"
    assert map_decode(BitString("1000"), m1b).bits == "010"


def test_zero_word_gets_zero_codeword():
    m = mapgen(zero_dominated_histogram(), 9)
    assert map_encode(BitString.zeros(64), m) == BitString.zeros(72)


def test_decode_unknown_codeword():
    m = mapgen(ranked(MONO_ORDER), 4, weight_monotone=True)
    with pytest.raises(DecodeError) as info:
        map_decode(BitString("0000" "1111"), m)
    assert info.value.offset == 4
    with pytest.raises(FramingError):
        map_encode(BitString("10"), m)
    with pytest.raises(FramingError):
        map_decode(BitString("100"), m)


def test_map_validation():
    with pytest.raises(InvalidParameterError):
        CodebookMap(2, 2, (0, 1, 1, 3))
    with pytest.raises(InvalidParameterError):
        CodebookMap(2, 2, (0, 1, 2, 4))
    with pytest.raises(InvalidParameterError):
        CodebookMap(2, 1, (0, 1, 0, 1))


histograms = st.integers(1, 5).flatmap(
    lambda k: st.lists(st.integers(0, 1000), min_size=1 << k, max_size=1 << k)
    .map(lambda c: DatawordHistogram(k, c)))


@given(histograms, st.integers(0, 2), st.booleans())
def test_generated_maps_are_valid(h, extra, constrained):
    n = h.k + extra
    if constrained and extra == 0:
        return
    m = mapgen(h, n, constrained)
    assert len(set(m.table)) == 1 << h.k
    if constrained:
        assert m.weight_increases() == []


def _expected_weight(h, table):
    return sum(int(h.counts[d]) * bin(c).count("1") for d, c in enumerate(table))


@given(st.lists(st.integers(0, 50), min_size=4, max_size=4), st.integers(2, 3))
def test_unconstrained_is_optimal_small(counts, n):
    # exhaustive over every injection of 2-bit datawords into n-bit codewords
    h = DatawordHistogram(2, counts)
    best = min(_expected_weight(h, perm)
               for perm in itertools.permutations(range(1 << n), 4))
    assert _expected_weight(h, mapgen(h, n).table) == best


def _matchable(datawords, free):
    """Augmenting-path bipartite matching: can every dataword get a lighter-or-equal codeword?"""
    owner = {}

    def augment(d, seen):
        for c in free:
            if bin(c).count("1") <= bin(d).count("1") and c not in seen:
                seen.add(c)
                if c not in owner or augment(owner[c], seen):
                    owner[c] = d
                    return True
        return False

    return all(augment(d, set()) for d in datawords)


def _reference_constrained(h, n):
    order = sorted(range(1 << h.k), key=lambda v: (-int(h.counts[v]), v))
    free = codeword_order(n)
    table = {}
    for i, d in enumerate(order):
        for c in free:
            if bin(c).count("1") > bin(d).count("1"):
                continue
            rest = [x for x in free if x != c]
            if _matchable(order[i + 1:], rest):
                table[d] = c
                free = rest
                break
    return tuple(table[d] for d in range(1 << h.k))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=8, max_size=8), st.integers(4, 5))
def test_constrained_matches_matching_oracle(counts, n):
    h = DatawordHistogram(3, counts)
    m = mapgen(h, n, weight_monotone=True)
    assert m.table == _reference_constrained(h, n)


def test_roundtrip_random(rng):
    h = zero_dominated_histogram()
    m = mapgen(h, 9)
    for p in synthesize_trace(h, 50, 512, seed=3):
        assert map_decode(map_encode(p, m), m) == p
        assert len(map_encode(p, m)) == 576


def test_cross_evaluate_diagonal():
    hs = [zero_dominated_histogram(p_zero=pz, p_ones=po) for pz, po in
          [(0.5, 0.1), (0.7, 0.2), (0.55, 0.3)]]
    hs.append(DatawordHistogram(8, np.arange(256)[::-1] + 1))
    traces = [synthesize_trace(h, 40, 512, seed=i) for i, h in enumerate(hs)]
    from lelc.profiler import profile
    maps = [mapgen(profile(t, 8), 9) for t in traces]
    grid = cross_evaluate(maps, traces)
    assert grid.shape == (4, 4)
    for i in range(4):
        assert grid[i, i] >= grid[i].max() - 1e-9
    same = cross_evaluate(maps, [traces[0], traces[0]])
    assert np.array_equal(same[0], same[1])


def test_cross_evaluate_single_word():
    m = mapgen(ranked(RATE1_ORDER), 3)
    trace = [BitString("110" * 4)]
    # 110 -> 101 keeps weight 2
    assert cross_evaluate([m], [trace])[0, 0] == pytest.approx(0.0)
    assert np.isnan(cross_evaluate([m], [[BitString.zeros(6)]])[0, 0])


def test_cross_evaluate_shape_mismatch():
    with pytest.raises(InvalidParameterError):
        cross_evaluate([mapgen(ranked(RATE1_ORDER), 3), mapgen(ranked(RATE1_ORDER), 4)], [])
