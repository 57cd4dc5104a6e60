import numpy as np
import pytest
from hypothesis import given, strategies as st

from lelc.bits import BitString, chunk, concat, nrzi_evolve, weight
from lelc.errors import InvalidParameterError

bitstrings = st.text(alphabet="01", max_size=200).map(BitString)


@pytest.mark.parametrize("bits,w", [("0000", 0), ("1111", 4), ("0110", 2), ("", 0)])
def test_weight(bits, w):
    assert weight(BitString(bits)) == w


@pytest.mark.parametrize("bits,k,chunks,rest", [
    ("010111", 3, ["010", "111"], ""),
    ("01011", 3, ["010"], "11"),
    ("", 8, [], ""),
])
def test_chunk_examples(bits, k, chunks, rest):
    got, tail = chunk(BitString(bits), k)
    assert [c.bits for c in got] == chunks
    assert tail.bits == rest


def test_chunk_rejects_zero_width():
    with pytest.raises(InvalidParameterError):
        chunk(BitString("0101"), 0)


@given(bitstrings, st.integers(1, 64))
def test_chunk_roundtrip(b, k):
    parts, tail = chunk(b, k)
    assert all(len(p) == k for p in parts)
    assert len(tail) < k
    assert concat(parts + [tail]) == b


@given(bitstrings, bitstrings, bitstrings)
def test_concat_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + BitString("") == a == BitString("") + a
    assert weight(a + b) == weight(a) + weight(b)


def test_rejects_non_binary_text():
    with pytest.raises(InvalidParameterError):
        BitString("0120")


def test_bytes_are_msb_first():
    b = BitString.from_bytes(b"\x80\x01")
    assert b.bits == "1000000000000001"
    assert b.to_bytes() == b"\x80\x01"
    assert BitString("101").to_bytes() == b"\xa0"
    assert BitString.from_int(5, 4).bits == "0101"


def test_nrzi_single_toggle():
    t = nrzi_evolve([BitString("1")], 1)
    assert t.transitions.tolist() == [[1]]
    assert t.states.tolist() == [[0, 1]]


def test_nrzi_double_toggle_returns_low():
    t = nrzi_evolve([BitString("1"), BitString("1")], 1)
    assert t.transitions.tolist() == [[1, -1]]
    assert t.states[0, -1] == 0


def test_nrzi_all_zero_is_quiet():
    t = nrzi_evolve([BitString("00"), BitString("00")], 2)
    assert t.transition_count() == 0
    assert (t.states == 0).all()


def test_nrzi_rejects_wrong_width():
    with pytest.raises(InvalidParameterError):
        nrzi_evolve([BitString("010")], 2)


@given(st.integers(1, 12).flatmap(
    lambda w: st.lists(st.text(alphabet="01", min_size=w, max_size=w), max_size=30)
    .map(lambda fs: (w, fs))))
def test_transitions_equal_total_weight(case):
    w, flits = case
    flits = [BitString(f) for f in flits]
    t = nrzi_evolve(flits, w)
    assert t.transition_count() == sum(f.weight() for f in flits)
    # state recurrence
    sent = np.array([[int(c) for c in f.bits] for f in flits], dtype=np.int8).reshape(-1, w).T
    assert (t.states[:, 1:] == t.states[:, :-1] ^ sent).all()
