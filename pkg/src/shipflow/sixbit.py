"""Six-bit payload armoring and the bit buffer used by message codecs.

AIS payloads travel inside NMEA sentences as printable characters, each
carrying six bits. De-armoring: v = ascii(c) - 48, then v -= 8 if v > 40;
the result must land in 0..63. The sentence's fill value says how many
padding bits to drop from the end of the last character.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SixbitAlphabetError

# 6-bit text alphabet (values 0..63), used by name/callsign/destination fields
SIXBIT_TEXT = "@ABCDEFGHIJKLMNOPQRSTUVWXYZ[\\]^_ !\"#$%&'()*+,-./0123456789:;<=>?"


@dataclass(slots=True)
class BitBuffer:
    """Fixed-length big-endian bit string backed by an int.

    Bit 0 is the most significant bit of the first payload character.
    """

    value: int
    length: int

    def uint(self, start: int, width: int) -> int:
        if start + width > self.length:
            raise IndexError(
                f"bit range [{start}:{start + width}] exceeds buffer of {self.length} bits"
            )
        shift = self.length - start - width
        return (self.value >> shift) & ((1 << width) - 1)

    def sint(self, start: int, width: int) -> int:
        raw = self.uint(start, width)
        if raw & (1 << (width - 1)):
            raw -= 1 << width
        return raw

    def text(self, start: int, width: int) -> str:
        """Decode a 6-bit text field; tolerates a truncated final group."""
        chars = []
        pos = start
        while pos + 6 <= min(start + width, self.length):
            chars.append(SIXBIT_TEXT[self.uint(pos, 6)])
            pos += 6
        return "".join(chars)

    def to01(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __len__(self) -> int:
        return self.length


class BitWriter:
    """Accumulates big-endian fields into a BitBuffer (encoder side)."""

    def __init__(self) -> None:
        self._value = 0
        self._length = 0

    def uint(self, value: int, width: int) -> "BitWriter":
        if not 0 <= value < (1 << width):
            raise ValueError(f"value {value} does not fit in {width} bits")
        self._value = (self._value << width) | value
        self._length += width
        return self

    def sint(self, value: int, width: int) -> "BitWriter":
        return self.uint((value + (1 << width)) % (1 << width), width)

    def text(self, txt: str, nchars: int) -> "BitWriter":
        padded = txt.ljust(nchars, "@")[:nchars]
        for ch in padded:
            idx = SIXBIT_TEXT.find(ch)
            if idx < 0:
                raise ValueError(f"character {ch!r} not encodable in 6-bit text")
            self.uint(idx, 6)
        return self

    def finish(self) -> BitBuffer:
        return BitBuffer(self._value, self._length)


def char_to_value(ch: str) -> int:
    v = ord(ch) - 48
    if v > 40:
        v -= 8
    return v


def decode_sixbit(payload: str, fill_bits: int) -> BitBuffer:
    """De-armor a payload string, dropping `fill_bits` trailing padding bits."""
    if fill_bits < 0 or fill_bits > 5:
        raise ValueError(f"fill_bits must be 0..5, got {fill_bits}")
    value = 0
    for offset, ch in enumerate(payload):
        o = ord(ch)
        if o < 48 or o > 119:
            raise SixbitAlphabetError(ch, offset)
        v = o - 48
        if v > 40:
            v -= 8
        value = (value << 6) | v
    length = 6 * len(payload) - fill_bits
    if length < 0:
        raise ValueError("fill_bits larger than payload bit count")
    return BitBuffer(value >> fill_bits, length)


def encode_sixbit(bits: BitBuffer) -> tuple[str, int]:
    """Armor a BitBuffer into (payload, fill_bits); inverse of decode_sixbit."""
    fill = (6 - bits.length % 6) % 6
    value = bits.value << fill
    nchars = (bits.length + fill) // 6
    chars = []
    for i in range(nchars):
        v = (value >> (6 * (nchars - 1 - i))) & 0x3F
        chars.append(chr(v + 48) if v < 40 else chr(v + 56))
    return "".join(chars), fill
