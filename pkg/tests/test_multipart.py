import pytest

from shipflow.errors import (
    DuplicateFragmentError,
    FragmentMismatchError,
    IncompleteMessageError,
)
from shipflow.multipart import MultipartAssembler, assemble_multipart
from shipflow.nmea import RawSentence, build_sentence, parse_sentence
from shipflow.sixbit import decode_sixbit


def frag(payload, count=1, index=1, seq=None, fill=0, chan="A", ts=None):
    return parse_sentence(
        build_sentence(payload, fill, count, index, seq, chan),
        receiver_timestamp=ts,
    )


def test_single_fragment_equals_plain_decode():
    f = frag("16:WcB0P", fill=2)
    assert assemble_multipart([f]) == decode_sixbit("16:WcB0P", 2)


def test_two_fragment_bit_length():
    a = frag("0000", count=2, index=1, seq=3)
    b = frag("00", count=2, index=2, seq=3, fill=4)
    bits = assemble_multipart([a, b])
    assert len(bits) == 6 * 6 - 4


def test_out_of_order_equals_in_order():
    a = frag("1234", count=2, index=1, seq=5)
    b = frag("wwww", count=2, index=2, seq=5, fill=2)
    assert assemble_multipart([b, a]) == assemble_multipart([a, b])


def test_missing_fragment_is_incomplete():
    a = frag("0000", count=3, index=1, seq=1)
    c = frag("0000", count=3, index=3, seq=1)
    with pytest.raises(IncompleteMessageError):
        assemble_multipart([a, c])


def test_duplicate_index_is_an_error():
    a = frag("0000", count=2, index=1, seq=1)
    a2 = frag("1111", count=2, index=1, seq=1)
    with pytest.raises(DuplicateFragmentError):
        assemble_multipart([a, a2])


def test_mismatched_groups_rejected():
    a = frag("0000", count=2, index=1, seq=1)
    b = frag("0000", count=3, index=2, seq=1)
    with pytest.raises(FragmentMismatchError):
        assemble_multipart([a, b])


def test_streaming_assembler_completes_groups():
    asm = MultipartAssembler()
    a = frag("0000", count=2, index=1, seq=4)
    b = frag("1111", count=2, index=2, seq=4, fill=2)
    assert asm.feed(a) is None
    done = asm.feed(b)
    assert done is not None
    assert done.bits == decode_sixbit("00001111", 2)


def test_streaming_assembler_out_of_order():
    asm = MultipartAssembler()
    a = frag("0000", count=2, index=1, seq=4)
    b = frag("1111", count=2, index=2, seq=4, fill=2)
    assert asm.feed(b) is None
    done = asm.feed(a)
    assert done is not None
    assert done.bits == decode_sixbit("00001111", 2)


def test_streaming_window_expires_by_sentence_count():
    asm = MultipartAssembler(max_pending_sentences=4)
    asm.feed(frag("0000", count=2, index=1, seq=9))
    for i in range(6):
        asm.feed(frag("0000", count=1, index=1))
    assert asm.expired_groups == 1
    # the straggler second fragment now opens a fresh (incomplete) group
    assert asm.feed(frag("1111", count=2, index=2, seq=9, fill=2)) is None


def test_streaming_window_expires_by_receiver_time():
    asm = MultipartAssembler(max_age_seconds=60)
    asm.feed(frag("0000", count=2, index=1, seq=2, ts=1000.0))
    asm.feed(frag("0000", count=1, index=1, ts=1100.0))
    assert asm.expired_groups == 1


def test_interleaved_channels_do_not_collide():
    asm = MultipartAssembler()
    a1 = frag("0000", count=2, index=1, seq=1, chan="A")
    b1 = frag("2222", count=2, index=1, seq=1, chan="B")
    b2 = frag("3333", count=2, index=2, seq=1, chan="B", fill=2)
    a2 = frag("1111", count=2, index=2, seq=1, chan="A", fill=2)
    assert asm.feed(a1) is None
    assert asm.feed(b1) is None
    done_b = asm.feed(b2)
    done_a = asm.feed(a2)
    assert done_b.bits == decode_sixbit("22223333", 2)
    assert done_a.bits == decode_sixbit("00001111", 2)


def test_duplicate_in_stream_counted_and_group_dropped():
    asm = MultipartAssembler()
    asm.feed(frag("0000", count=2, index=1, seq=7))
    with pytest.raises(DuplicateFragmentError):
        asm.feed(frag("0000", count=2, index=1, seq=7))
    assert asm.duplicate_fragments == 1


def test_fill_bits_taken_from_final_fragment_only():
    # first fragment always aligns to 6 bits; only the tail fill applies
    a = frag("00", count=2, index=1, seq=0)
    b = frag("w", count=2, index=2, seq=0, fill=4)
    bits = assemble_multipart([a, b])
    assert bits.to01() == "0" * 12 + "11"


def test_multipart_timestamp_is_first_fragment():
    asm = MultipartAssembler()
    asm.feed(frag("0000", count=2, index=1, seq=1, ts=50.0))
    done = asm.feed(frag("0000", count=2, index=2, seq=1, ts=51.0))
    assert done.receiver_timestamp == 50.0
