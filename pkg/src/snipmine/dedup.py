"""Near-duplicate removal of anchor contexts sharing a target page.

Contexts are fingerprinted as 128-bit binary signatures over word
uni/bi/trigrams (feature hashing with a pinned FNV-1a hash) and compared
by cosine similarity; within a target group, later near-duplicates of an
earlier survivor are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .records import AnchorContextRecord
from .textproc import tokenize

SIGNATURE_BITS = 128

#: Contexts more similar than this to an earlier survivor are duplicates.
DUPLICATE_COSINE_THRESHOLD = 0.9

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_GRAM_SEP = "\x1f"


def stable_hash(text: str) -> int:
    """64-bit FNV-1a over UTF-8 bytes; pinned across runs and platforms."""
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


@dataclass(frozen=True)
class Signature:
    bits: int  # 128-bit vector packed into an int
    popcount: int

    @classmethod
    def from_bits(cls, bits: int) -> "Signature":
        return cls(bits, bits.bit_count())


def signature(text: str) -> Signature:
    """Hash the lowercased word 1-, 2-, and 3-grams into 128 buckets."""
    words = [t.lower() for t in tokenize(text)]
    bits = 0
    for n in (1, 2, 3):
        for i in range(len(words) - n + 1):
            gram = _GRAM_SEP.join(words[i:i + n])
            bits |= 1 << (stable_hash(gram) % SIGNATURE_BITS)
    return Signature.from_bits(bits)


def cosine(a: Signature, b: Signature) -> float:
    """Cosine similarity over set bits; defined as 0 when either is empty."""
    if a.popcount == 0 or b.popcount == 0:
        return 0.0
    shared = (a.bits & b.bits).bit_count()
    return shared / math.sqrt(a.popcount * b.popcount)


def dedup_group(
    records: Sequence[AnchorContextRecord],
    threshold: float = DUPLICATE_COSINE_THRESHOLD,
) -> list[AnchorContextRecord]:
    """Greedy near-duplicate removal within one target-URL group.

    Records are visited in (source_doc_id, anchor page offset) order; a
    record is dropped iff its signature's cosine to any earlier survivor
    exceeds the threshold. The earliest record always survives.
    """
    ordered = sorted(records, key=lambda r: (r.source_doc_id, r.anchor_page_span[0]))
    survivors: list[AnchorContextRecord] = []
    survivor_sigs: list[Signature] = []
    for record in ordered:
        sig = signature(record.context)
        if any(cosine(sig, prev) > threshold for prev in survivor_sigs):
            continue
        survivors.append(record)
        survivor_sigs.append(sig)
    return survivors
