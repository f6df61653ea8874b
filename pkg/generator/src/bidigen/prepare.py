"""Turning training triples into tensorizable examples.

A snippet is split at its query span into the part before the query and
the part after it. The model generates both parts outward from the
query, so the before-part target is stored in reversed order (the
right-to-left decoder emits the token adjacent to the query first).

Out-of-vocabulary tokens keep a copy index into the encoder source: ids
at or above the vocabulary size address the example's own source-token
list, which is what the copy mechanism points at.
"""

from __future__ import annotations

from dataclasses import dataclass

from .records import Triple
from .vocab import EOS_NEXT, EOS_PREV, SEP, UNK, Vocab


@dataclass
class PreparedExample:
    doc_id: str
    query_tokens: list[str]
    source_tokens: list[str]        # query ++ separator ++ prepared document
    source_ids: list[int]           # vocabulary ids (unknowns collapsed)
    source_extended_ids: list[int]  # per-position ids in the extended vocabulary
    source_oov: list[str]           # tokens with extended ids len(vocab)+i
    prev_target: list[int]          # extended ids, reversed, ends with EOS_PREV
    next_target: list[int]          # extended ids, ends with EOS_NEXT


def _extended(token: str, vocab: Vocab, oov_index: dict[str, int]) -> int:
    if token in vocab:
        return vocab.id(token)
    if token in oov_index:
        return len(vocab) + oov_index[token]
    return UNK


def prepare(triple: Triple, document_text: str, vocab: Vocab) -> PreparedExample:
    """Split the snippet at the query span and index everything."""
    start, end = triple.query_span_in_snippet
    query_tokens = triple.query.split()
    prev_tokens = triple.snippet[:start].split()
    next_tokens = triple.snippet[end:].split()

    source_tokens = query_tokens + [vocab.token(SEP)] + document_text.split()
    oov_index: dict[str, int] = {}
    for token in source_tokens:
        if token not in vocab and token not in oov_index:
            oov_index[token] = len(oov_index)
    source_oov = sorted(oov_index, key=oov_index.get)

    return PreparedExample(
        doc_id=triple.doc_id,
        query_tokens=query_tokens,
        source_tokens=source_tokens,
        source_ids=[vocab.id(t) for t in source_tokens],
        source_extended_ids=[_extended(t, vocab, oov_index) for t in source_tokens],
        source_oov=source_oov,
        prev_target=[_extended(t, vocab, oov_index) for t in reversed(prev_tokens)]
        + [EOS_PREV],
        next_target=[_extended(t, vocab, oov_index) for t in next_tokens]
        + [EOS_NEXT],
    )


def extended_token(ext_id: int, vocab: Vocab, source_oov: list[str]) -> str:
    """Map an extended-vocabulary id back to its surface token."""
    if ext_id < len(vocab):
        return vocab.token(ext_id)
    return source_oov[ext_id - len(vocab)]
