"""Reassembly of multi-fragment AIS messages.

Long payloads (static reports, mostly) arrive as two or more sentences
sharing a sequence id. Fragments may arrive out of order and feeds may be
lossy, so pending groups are bounded by a reassembly window: a group is
abandoned after `max_pending_sentences` later sentences, or when receiver
time advances more than `max_age_seconds` past its first fragment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DuplicateFragmentError,
    FragmentMismatchError,
    IncompleteMessageError,
)
from .nmea import RawSentence
from .sixbit import BitBuffer, decode_sixbit


def assemble_multipart(fragments: list[RawSentence]) -> BitBuffer:
    """Join a complete fragment group into one de-armored bit buffer.

    fill_bits are honored from the final fragment only; earlier fragments
    always align to a 6-bit boundary.
    """
    if not fragments:
        raise IncompleteMessageError("no fragments")
    count = fragments[0].fragment_count
    seq = fragments[0].sequence_id
    chan = fragments[0].channel
    for f in fragments[1:]:
        if f.fragment_count != count or f.sequence_id != seq or f.channel != chan:
            raise FragmentMismatchError(
                "fragments disagree on count, sequence id, or channel"
            )
    by_index: dict[int, RawSentence] = {}
    for f in fragments:
        if f.fragment_index in by_index:
            raise DuplicateFragmentError(f"fragment index {f.fragment_index} repeated")
        by_index[f.fragment_index] = f
    missing = [i for i in range(1, count + 1) if i not in by_index]
    if missing:
        raise IncompleteMessageError(f"missing fragment indices {missing}")
    payload = "".join(by_index[i].payload for i in range(1, count + 1))
    return decode_sixbit(payload, by_index[count].fill_bits)


@dataclass(slots=True)
class _Pending:
    fragments: list[RawSentence] = field(default_factory=list)
    first_seen_seq: int = 0
    first_seen_ts: float | None = None

    def has_index(self, idx: int) -> bool:
        return any(f.fragment_index == idx for f in self.fragments)


@dataclass(slots=True)
class AssembledMessage:
    bits: BitBuffer
    fragments: list[RawSentence]

    @property
    def receiver_timestamp(self) -> float | None:
        # first fragment's receiver time stamps the whole message
        return self.fragments[0].receiver_timestamp


class MultipartAssembler:
    """Streaming reassembler with a bounded window for incomplete groups."""

    def __init__(self, max_pending_sentences: int = 64, max_age_seconds: float = 60.0):
        self.max_pending_sentences = max_pending_sentences
        self.max_age_seconds = max_age_seconds
        self._pending: dict[tuple, _Pending] = {}
        self._feed_count = 0
        self.expired_groups = 0
        self.duplicate_fragments = 0

    def feed(self, sentence: RawSentence) -> AssembledMessage | None:
        """Add one sentence; returns the assembled message when complete."""
        self._feed_count += 1
        self._expire(sentence.receiver_timestamp)
        if sentence.fragment_count == 1:
            bits = decode_sixbit(sentence.payload, sentence.fill_bits)
            return AssembledMessage(bits, [sentence])
        key = (sentence.channel, sentence.sequence_id, sentence.fragment_count)
        pending = self._pending.get(key)
        if pending is None:
            pending = _Pending(
                first_seen_seq=self._feed_count,
                first_seen_ts=sentence.receiver_timestamp,
            )
            self._pending[key] = pending
        if pending.has_index(sentence.fragment_index):
            # retransmission or id collision: drop the whole group
            del self._pending[key]
            self.duplicate_fragments += 1
            raise DuplicateFragmentError(
                f"fragment index {sentence.fragment_index} repeated in group {key}"
            )
        pending.fragments.append(sentence)
        if len(pending.fragments) == sentence.fragment_count:
            del self._pending[key]
            ordered = sorted(pending.fragments, key=lambda f: f.fragment_index)
            return AssembledMessage(assemble_multipart(ordered), ordered)
        return None

    def _expire(self, now_ts: float | None) -> None:
        stale = []
        for key, pending in self._pending.items():
            if self._feed_count - pending.first_seen_seq >= self.max_pending_sentences:
                stale.append(key)
            elif (
                now_ts is not None
                and pending.first_seen_ts is not None
                and now_ts - pending.first_seen_ts > self.max_age_seconds
            ):
                stale.append(key)
        for key in stale:
            del self._pending[key]
            self.expired_groups += 1

    def flush(self) -> int:
        """Abandon all pending groups (end of stream); returns how many."""
        n = len(self._pending)
        self._pending.clear()
        self.expired_groups += n
        return n
