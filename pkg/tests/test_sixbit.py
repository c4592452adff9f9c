import pytest
from hypothesis import given
from hypothesis import strategies as st

from shipflow.errors import SixbitAlphabetError
from shipflow.sixbit import BitBuffer, BitWriter, decode_sixbit, encode_sixbit


def test_zero_char_is_six_zero_bits():
    buf = decode_sixbit("0", 0)
    assert buf.to01() == "000000"


def test_w_char_is_six_one_bits():
    # 'w' is ascii 119: 119 - 48 = 71 > 40, so 71 - 8 = 63
    buf = decode_sixbit("w", 0)
    assert buf.to01() == "111111"


def test_fill_bits_drop_from_the_end():
    buf = decode_sixbit("00", 4)
    assert len(buf) == 8
    assert buf.to01() == "00000000"


def test_bit_length_law():
    for payload, fill in [("0", 0), ("0000", 3), ("w0w0", 5), ("P", 2)]:
        assert len(decode_sixbit(payload, fill)) == 6 * len(payload) - fill


def test_invalid_character_names_char_and_offset():
    with pytest.raises(SixbitAlphabetError) as exc:
        decode_sixbit("00 00", 0)  # space (ascii 32) is below the alphabet
    assert exc.value.char == " "
    assert exc.value.offset == 2


def test_invalid_high_character():
    with pytest.raises(SixbitAlphabetError):
        decode_sixbit("0z", 0)  # 'z' is ascii 122, above the alphabet


def test_uint_and_sint_extraction():
    buf = BitWriter().uint(5, 6).sint(-3, 8).uint(1023, 10).finish()
    assert buf.uint(0, 6) == 5
    assert buf.sint(6, 8) == -3
    assert buf.uint(14, 10) == 1023


def test_uint_out_of_range_raises():
    buf = decode_sixbit("00", 0)
    with pytest.raises(IndexError):
        buf.uint(8, 6)


def test_writer_rejects_oversized_values():
    with pytest.raises(ValueError):
        BitWriter().uint(64, 6)


def test_text_round_trip():
    buf = BitWriter().text("HELLO WORLD 42", 20).finish()
    assert buf.text(0, 120).rstrip("@ ") == "HELLO WORLD 42"


@given(st.binary(min_size=1, max_size=60))
def test_armor_round_trip_over_random_bits(data):
    bits = BitBuffer(int.from_bytes(data, "big"), len(data) * 8)
    payload, fill = encode_sixbit(bits)
    assert 6 * len(payload) - fill == len(bits)
    back = decode_sixbit(payload, fill)
    assert back == bits


@given(st.integers(min_value=0, max_value=5), st.text(
    alphabet=st.characters(min_codepoint=48, max_codepoint=119), min_size=1, max_size=80
))
def test_decode_length_always_honors_the_law(fill, payload):
    if fill > 6 * len(payload):
        return
    buf = decode_sixbit(payload, fill)
    assert len(buf) == 6 * len(payload) - fill
