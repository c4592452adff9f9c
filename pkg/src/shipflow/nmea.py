"""NMEA 0183 framing for AIVDM/AIVDO sentences.

Lines look like

    1578441600<TAB>!AIVDM,2,1,3,B,<payload>,0*4C

where the epoch-seconds prefix is optional (aggregated feeds need it; bare
receivers omit it). The checksum is the XOR of every character strictly
between '!' and '*'.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SentenceFormatError

_VALID_TALKER_SUFFIXES = ("VDM", "VDO")


@dataclass(slots=True)
class RawSentence:
    talker: str
    fragment_count: int
    fragment_index: int
    sequence_id: int | None
    channel: str | None
    payload: str
    fill_bits: int
    checksum: int
    receiver_timestamp: float | None = None


def nmea_checksum(body: str) -> int:
    cs = 0
    for ch in body:
        cs ^= ord(ch)
    return cs & 0xFF


def verify_checksum(sentence: str) -> bool:
    """True iff the '*hh' value matches the XOR of the framed body.

    Raises SentenceFormatError when the framing itself is broken (no '!',
    no '*' followed by two hex digits); a mismatch is an ordinary False.
    """
    if not sentence.startswith("!"):
        raise SentenceFormatError("sentence does not start with '!'")
    body, star, tail = sentence[1:].partition("*")
    if not star or len(tail) < 2:
        raise SentenceFormatError("sentence has no '*hh' checksum suffix")
    try:
        claimed = int(tail[:2], 16)
    except ValueError:
        raise SentenceFormatError(f"non-hex checksum {tail[:2]!r}") from None
    return nmea_checksum(body) == claimed


def split_line(line: str) -> tuple[float | None, str]:
    """Separate the optional epoch-seconds prefix from the sentence proper."""
    line = line.strip()
    bang = line.find("!")
    if bang < 0:
        raise SentenceFormatError("no '!' found in line")
    prefix = line[:bang].strip()
    if not prefix:
        return None, line
    try:
        return float(prefix), line[bang:]
    except ValueError:
        raise SentenceFormatError(f"unparseable timestamp prefix {prefix!r}") from None


def parse_sentence(sentence: str, receiver_timestamp: float | None = None) -> RawSentence:
    """Parse one framed AIVDM/AIVDO sentence; checksum must verify."""
    if not verify_checksum(sentence):
        raise SentenceFormatError("checksum mismatch")
    body = sentence[1 : sentence.index("*")]
    fields = body.split(",")
    if len(fields) != 7:
        raise SentenceFormatError(f"expected 7 comma fields, got {len(fields)}")
    talker = fields[0]
    if len(talker) != 5 or talker[2:] not in _VALID_TALKER_SUFFIXES:
        raise SentenceFormatError(f"not an AIS sentence: {talker!r}")
    try:
        fragment_count = int(fields[1])
        fragment_index = int(fields[2])
    except ValueError:
        raise SentenceFormatError("non-integer fragment fields") from None
    sequence_id = None
    if fields[3]:
        try:
            sequence_id = int(fields[3])
        except ValueError:
            raise SentenceFormatError(f"bad sequence id {fields[3]!r}") from None
    channel = fields[4] or None
    payload = fields[5]
    if not payload:
        raise SentenceFormatError("empty payload")
    try:
        fill_bits = int(fields[6])
    except ValueError:
        raise SentenceFormatError(f"bad fill bits {fields[6]!r}") from None
    if not 0 <= fill_bits <= 5:
        raise SentenceFormatError(f"fill bits {fill_bits} out of range 0..5")
    if fragment_count < 1 or not 1 <= fragment_index <= fragment_count:
        raise SentenceFormatError(
            f"bad fragment numbering {fragment_index}/{fragment_count}"
        )
    return RawSentence(
        talker=talker,
        fragment_count=fragment_count,
        fragment_index=fragment_index,
        sequence_id=sequence_id,
        channel=channel,
        payload=payload,
        fill_bits=fill_bits,
        checksum=int(sentence[sentence.index("*") + 1 :][:2], 16),
        receiver_timestamp=receiver_timestamp,
    )


def parse_line(line: str) -> RawSentence:
    """Parse a raw input line (optional timestamp prefix + sentence)."""
    ts, sentence = split_line(line)
    return parse_sentence(sentence, receiver_timestamp=ts)


def build_sentence(
    payload: str,
    fill_bits: int,
    fragment_count: int = 1,
    fragment_index: int = 1,
    sequence_id: int | None = None,
    channel: str = "A",
    talker: str = "AIVDM",
) -> str:
    """Frame a payload into a checksummed sentence (generator/test side)."""
    seq = "" if sequence_id is None else str(sequence_id)
    body = f"{talker},{fragment_count},{fragment_index},{seq},{channel},{payload},{fill_bits}"
    return f"!{body}*{nmea_checksum(body):02X}"
