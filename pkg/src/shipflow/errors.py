"""Exception types shared across the package."""


class ShipflowError(Exception):
    """Base class for all package errors."""


class ConfigError(ShipflowError):
    """Bad configuration: missing columns, invalid thresholds, bad flags."""


class DecodeError(ShipflowError):
    """Base class for AIS decoding problems."""


class SentenceFormatError(DecodeError):
    """NMEA framing is broken: missing '!', missing '*hh', bad field syntax."""


class SixbitAlphabetError(DecodeError):
    """Payload character outside the 6-bit armoring alphabet."""

    def __init__(self, char: str, offset: int):
        self.char = char
        self.offset = offset
        super().__init__(f"invalid payload character {char!r} at offset {offset}")


class MultipartError(DecodeError):
    """Base class for multi-fragment reassembly problems."""


class IncompleteMessageError(MultipartError):
    """A fragment group is missing one or more fragment indices."""


class DuplicateFragmentError(MultipartError):
    """The same fragment index arrived twice for one group."""


class FragmentMismatchError(MultipartError):
    """Fragments disagree on sequence id, fragment count, or channel."""


class TruncatedMessageError(DecodeError):
    """Payload shorter than the minimum length for its message type."""


class UnsupportedTypeError(DecodeError):
    """Message type outside the supported set; skippable, counted in stats."""

    def __init__(self, message_type: int):
        self.message_type = message_type
        super().__init__(f"unsupported message type {message_type}")
