import pytest
from hypothesis import given, strategies as st

from lelc.bits import BitString
from lelc.errors import (DecodeError, FramingError, IncompleteParseError,
                         InvalidParameterError, TableViolation)
from lelc.prefixcode import (HUFFMAN_EXAMPLE, ChunkFrameConfig, PrefixCodeTable, builtin_tc1,
                             builtin_tc2, chunked_decode, framed_decode, framed_encode,
                             stream_decode, stream_encode, tc1_chunked_decode,
                             tc1_chunked_encode, validate)

TC1, TC2 = builtin_tc1(), builtin_tc2()


def naive_parse(bits, pairs):
    """Reference greedy parse by trying every entry."""
    out, i = [], 0
    while i < len(bits):
        hits = [(p, c) for p, c in pairs if bits.startswith(p, i)]
        assert len(hits) == 1
        out.append(hits[0][1])
        i += len(hits[0][0])
    return "".join(out)


def pairs_of(table):
    return [(p.bits, c.bits) for p, c in table.entries]


def test_huffman_example():
    assert validate(HUFFMAN_EXAMPLE).ok
    for d, c in [("00", "0"), ("11", "11"), ("01", "100"), ("10", "101")]:
        assert stream_encode(BitString(d), HUFFMAN_EXAMPLE).bits == c
        assert stream_decode(BitString(c), HUFFMAN_EXAMPLE).bits == d
    assert stream_encode(BitString("0011"), HUFFMAN_EXAMPLE).bits == "011"
    assert stream_decode(BitString("011"), HUFFMAN_EXAMPLE).bits == "0011"
    assert stream_decode(BitString("100101"), HUFFMAN_EXAMPLE).bits == "0110"


def test_duplicate_path():
    r = validate(PrefixCodeTable.from_pairs([("0", "0"), ("0", "1")]))
    assert "duplicate-path" in r.kinds()


def test_incomplete_tree():
    assert validate(PrefixCodeTable.from_pairs([("0", "0")])).kinds() == {"kraft"}


def test_prefix_clashes_reported():
    r = validate(PrefixCodeTable.from_pairs([("0", "0"), ("01", "10"), ("1", "1")]))
    assert {"path-prefix", "codeword-prefix", "kraft"} <= r.kinds()


def test_weight_check_lists_entries():
    t = PrefixCodeTable.from_pairs([("0", "1"), ("1", "0")])
    r = validate(t, check_weight=True)
    assert r.weight_violations == (0,)
    assert validate(t).ok


def test_malformed_table_refused_by_coder():
    with pytest.raises(TableViolation):
        stream_encode(BitString("0"), PrefixCodeTable.from_pairs([("0", "0")]))


def test_tc1_shape():
    assert validate(TC1, check_weight=True).ok
    d = dict(pairs_of(TC1))
    assert d["000"] == "0000"
    assert {len(c) for c in d.values()} == {4}
    assert {len(p) for p in d} == {3, 4, 5}
    assert len(d["11111"]) == 4


def test_tc2_shape():
    assert validate(TC2, check_weight=True).ok
    d = dict(pairs_of(TC2))
    assert len(d) == 12
    assert d["0000"] == "0000"
    assert len(d["111111"]) == 4
    assert {len(p) for p in d} == {3, 4, 5, 6}
    for p, c in d.items():
        assert c.count("1") <= p.count("1")


def test_tc1_zero_stream():
    assert stream_encode(BitString("000000"), TC1).bits == "00000000"


def test_empty_stream():
    assert stream_encode(BitString(""), TC1).bits == ""
    assert stream_decode(BitString(""), TC1).bits == ""


def test_incomplete_parse_carries_residue():
    with pytest.raises(IncompleteParseError) as info:
        stream_encode(BitString("00011"), TC1)
    assert info.value.residue.bits == "11"


def test_decode_error_offset():
    with pytest.raises(DecodeError) as info:
        stream_decode(BitString("0000" "1111"), TC1)
    assert info.value.offset == 4


def parseable(table):
    paths = [p.bits for p, _ in table.entries]
    return st.lists(st.sampled_from(paths), max_size=60).map("".join)


@pytest.mark.parametrize("table,hi", [(TC1, 5 / 4), (TC2, 6 / 4)])
@given(data=st.data())
def test_stream_properties(table, hi, data):
    s = data.draw(parseable(table))
    coded = stream_encode(BitString(s), table)
    assert coded.bits == naive_parse(s, pairs_of(table))
    assert stream_decode(coded, table).bits == s
    assert coded.weight() <= s.count("1")
    if s:
        assert 3 / 4 <= len(s) / len(coded) <= hi


@pytest.mark.parametrize("table", [TC1, TC2, HUFFMAN_EXAMPLE])
@given(s=st.text(alphabet="01", max_size=80))
def test_framed_roundtrip_any_length(table, s):
    coded = framed_encode(BitString(s), table)
    assert framed_decode(coded, table, len(s)).bits == s
    if table is not HUFFMAN_EXAMPLE:
        assert coded.weight() <= s.count("1")


def test_framed_decode_rejects_leftover():
    coded = framed_encode(BitString("000"), TC1)
    with pytest.raises(DecodeError):
        framed_decode(coded + BitString("0000"), TC1, 3)


def test_chunk_all_zero():
    coded = tc1_chunked_encode(BitString.zeros(32))
    assert coded.bits == "0" * 42
    assert tc1_chunked_decode(BitString.zeros(42)).bits == "0" * 32


def test_chunk_raw_tail():
    payload = "000" * 10 + "11"
    coded = tc1_chunked_encode(BitString(payload)).bits
    assert coded == "0000" * 10 + "11" + "0" * 0
    assert len(coded) == 42
    assert tc1_chunked_decode(BitString(coded)).bits == payload


def test_chunk_zero_extension_case():
    # 29 bits consumed, "111" left: no 3-bit path, so the leaf 1110 is sent
    payload = "000" * 8 + "11110" + "111"
    assert len(payload) == 32
    coded = tc1_chunked_encode(BitString(payload)).bits
    assert coded[:40] == "0000" * 8 + "1011" + "0111"
    assert coded[40:] == "00"
    assert tc1_chunked_decode(BitString(coded)).bits == payload


def test_chunk_zero_extension_to_long_leaf():
    # "1111" left at bit 28 extends to path 11110
    payload = "000" * 8 + "1110" + "1111"
    assert len(payload) == 32
    coded = tc1_chunked_encode(BitString(payload)).bits
    assert coded == "0000" * 8 + "0111" + "1011" + "00"
    assert tc1_chunked_decode(BitString(coded)).bits == payload


def test_chunk_overrunning_path_decodes_to_32_bits():
    # frame whose last codeword (1101, path 11111) overruns the chunk by 2
    frame = "0000" * 9 + "1101" + "00"
    out = tc1_chunked_decode(BitString(frame))
    assert out.bits == "000" * 9 + "11111"[:5]
    assert len(out) == 32


@given(s=st.text(alphabet="01", min_size=512, max_size=512))
def test_chunked_roundtrip(s):
    coded = tc1_chunked_encode(BitString(s))
    assert len(coded) == 42 * 16
    assert coded.weight() <= s.count("1")
    assert tc1_chunked_decode(coded).bits == s


def test_chunk_frame_bound():
    cfg = ChunkFrameConfig()
    assert cfg.bound() == 42
    assert cfg.rate == 32 / 42
    with pytest.raises(InvalidParameterError):
        ChunkFrameConfig(codeword_chunk_bits=41)


def test_chunk_framing_errors():
    with pytest.raises(FramingError):
        tc1_chunked_encode(BitString.zeros(31))
    with pytest.raises(FramingError):
        tc1_chunked_decode(BitString.zeros(41))


def test_chunk_decode_names_frame():
    bad = "0" * 42 + "1111" + "0" * 38
    with pytest.raises(DecodeError, match="frame 1"):
        chunked_decode(BitString(bad), TC1, ChunkFrameConfig())
