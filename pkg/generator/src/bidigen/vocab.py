"""Token vocabulary with reserved control ids.

The copy mechanism lets the decoders point at source tokens that the
vocabulary does not cover, so the vocabulary stays deliberately small:
reserved markers first, then the most frequent corpus tokens up to a cap.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .errors import EmptyCorpusError

PAD = 0          # padding (never scored)
UNK = 1          # out-of-vocabulary token
BOS_PREV = 2     # start marker for the right-to-left decoder
BOS_NEXT = 3     # start marker for the left-to-right decoder
EOS_PREV = 4     # end marker for the right-to-left decoder
EOS_NEXT = 5     # end marker for the left-to-right decoder
SEP = 6          # separator between query and document in the encoder input

RESERVED_TOKENS = (
    "<pad>", "<unk>", "<s-prev>", "<s-next>", "</s-prev>", "</s-next>", "<sep>",
)


@dataclass(frozen=True)
class Vocab:
    """A total bijection between tokens and ids, reserved markers included."""

    tokens: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {token: i for i, token in enumerate(self.tokens)}
        if len(index) != len(self.tokens):
            raise ValueError("vocabulary tokens must be distinct")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def id(self, token: str) -> int:
        return self.index.get(token, UNK)

    def token(self, token_id: int) -> str:
        return self.tokens[token_id]


def build_vocab(texts: Iterable[str], cap: int = 5000) -> Vocab:
    """Build a vocabulary from the cap most frequent whitespace tokens.

    Ties are broken lexicographically so that the same corpus always
    yields the same vocabulary. Raises on an empty corpus.
    """
    counts = Counter()
    for text in texts:
        counts.update(text.split())
    if not counts:
        raise EmptyCorpusError("cannot build a vocabulary from an empty corpus")
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    kept = [token for token, _ in ranked if token not in RESERVED_TOKENS][:cap]
    return Vocab(RESERVED_TOKENS + tuple(kept))
