"""Main-content extraction: render markup to text blocks, then drop
boilerplate by three heuristics (short paragraphs, sentences with few
letter-only tokens, sentences without an English function word)."""

from __future__ import annotations

import re
from dataclasses import replace

from .htmltext import render_blocks  # re-exported as part of this module's surface
from .records import DocumentRecord
from .textproc import WordLists, letter_token_ratio, load_word_lists, split_sentences, tokenize

__all__ = ["render_blocks", "clean_blocks", "extract_content", "MIN_PARAGRAPH_CHARS"]

#: Paragraphs shorter than this (after whitespace normalization) are dropped.
MIN_PARAGRAPH_CHARS = 400

#: Sentences with a letter-only token ratio strictly below this are dropped.
MIN_LETTER_RATIO = 0.5

_WS_RE = re.compile(r"\s+")


def clean_blocks(paragraphs: list[str], lists: WordLists | None = None) -> str:
    """Drop boilerplate paragraphs and sentences; join survivors.

    A paragraph survives iff its whitespace-normalized length is at least
    MIN_PARAGRAPH_CHARS. Within surviving paragraphs, a sentence survives
    iff at least half of its tokens are letter-only and it contains at
    least one English function word. Survivors are concatenated with
    blank-line separators.
    """
    lists = lists if lists is not None else load_word_lists()
    kept_paragraphs = []
    for paragraph in paragraphs:
        normalized = _WS_RE.sub(" ", paragraph).strip()
        if len(normalized) < MIN_PARAGRAPH_CHARS:
            continue
        kept_sentences = []
        for start, end in split_sentences(normalized):
            sentence = normalized[start:end]
            tokens = tokenize(sentence)
            if not tokens:
                continue
            if letter_token_ratio(tokens) < MIN_LETTER_RATIO:
                continue
            if not any(t.lower() in lists.function_words for t in tokens):
                continue
            kept_sentences.append(sentence)
        if kept_sentences:
            kept_paragraphs.append(" ".join(kept_sentences))
    return "\n\n".join(kept_paragraphs)


def extract_content(doc: DocumentRecord, lists: WordLists | None = None) -> DocumentRecord:
    """Return a copy of the document with plain_text filled."""
    return replace(doc, plain_text=clean_blocks(render_blocks(doc.raw_html), lists))


def word_count(text: str) -> int:
    """Whitespace-delimited word count of extracted text."""
    return len(text.split())
