"""Deterministic linguistic primitives: tokenization, sentence splitting,
POS tagging, strict-noun-phrase chunking, word-list statistics, and
profile-based language identification.

All functions here are pure and safe to call from any number of workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from .errors import TaggingError, UndefinedInputError

TAGSET = frozenset({"DET", "ADJ", "NOUN", "VERB", "OTHER"})

# A token is a maximal run of letters/digits (with internal apostrophes),
# or a single non-space character otherwise.
_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*|\S", re.UNICODE)

_SENT_TERMINATORS = set(".!?")
_SENT_TRAILERS = set("\"')]}’”")

# Words whose trailing period does not end a sentence.
_ABBREVIATIONS = frozenset(
    {"mr", "mrs", "ms", "dr", "prof", "sr", "jr", "vs", "etc", "inc", "ltd", "co", "st"}
)


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    is_letter_only: bool

    def lower(self) -> str:
        return self.surface.lower()


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: str

    def __post_init__(self):
        if self.tag not in TAGSET:
            raise ValueError(f"unknown POS tag: {self.tag!r}")


@dataclass(frozen=True)
class StrictNounPhrase:
    words: tuple[Token, ...]
    span: tuple[int, int]

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.words)


@dataclass(frozen=True)
class WordLists:
    stop_words: frozenset[str]
    function_words: frozenset[str]
    verbs_lexicon: frozenset[str]


def tokenize(text: str) -> list[Token]:
    """Split text into offset-preserving tokens.

    Letter/digit runs (with internal apostrophes) form one token; every
    other non-space character is a token of its own.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group()
        tokens.append(Token(surface, m.start(), m.end(), surface.isalpha()))
    return tokens


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Split text into sentence spans.

    A sentence ends at '.', '!' or '?' (plus trailing quotes/brackets)
    followed by whitespace and an uppercase letter or digit, unless the
    preceding word is a known abbreviation. Spans are trimmed to
    non-whitespace bounds and cover all non-whitespace text.
    """
    spans = []
    n = len(text)
    start = 0
    i = 0
    while i < n:
        ch = text[i]
        if ch in _SENT_TERMINATORS:
            j = i + 1
            while j < n and (text[j] in _SENT_TERMINATORS or text[j] in _SENT_TRAILERS):
                j += 1
            if _is_boundary(text, i, j):
                span = _trim_span(text, start, j)
                if span is not None:
                    spans.append(span)
                start = j
                i = j
                continue
            i = j
        else:
            i += 1
    span = _trim_span(text, start, n)
    if span is not None:
        spans.append(span)
    return spans


def _is_boundary(text: str, term_pos: int, after: int) -> bool:
    if after >= len(text):
        return True
    if not text[after].isspace():
        return False
    if text[term_pos] == "." and _preceding_word(text, term_pos).lower() in _ABBREVIATIONS:
        return False
    k = after
    while k < len(text) and text[k].isspace():
        k += 1
    if k >= len(text):
        return True
    nxt = text[k]
    if nxt in _SENT_TRAILERS and k + 1 < len(text):
        nxt = text[k + 1]
    return nxt.isupper() or nxt.isdigit()


def _preceding_word(text: str, pos: int) -> str:
    end = pos
    start = end
    while start > 0 and (text[start - 1].isalpha() or text[start - 1] == "'"):
        start -= 1
    return text[start:end]


def _trim_span(text: str, start: int, end: int):
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    if start >= end:
        return None
    return (start, end)


class TaggerBackend(Protocol):
    def tag(self, tokens: Sequence[Token]) -> list[str]:
        """Return one tag from TAGSET per token, in order."""
        ...


class LexiconTagger:
    """Lexicon + suffix-rule baseline tagger.

    Lookup order: lexicon entry, verb lexicon, then suffix rules; unknown
    words default to NOUN (the safest choice for noun-phrase chunking).
    """

    _ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "ish", "less", "ical", "al", "ic")
    _NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ship", "hood", "ism")

    def __init__(self, lexicon: dict[str, str], verbs: Iterable[str]):
        self.lexicon = lexicon
        self.verbs = frozenset(verbs)

    def tag(self, tokens: Sequence[Token]) -> list[str]:
        return [self._tag_one(t) for t in tokens]

    def _tag_one(self, token: Token) -> str:
        word = token.lower()
        tag = self.lexicon.get(word)
        if tag is not None:
            return tag
        if word in self.verbs:
            return "VERB"
        if not token.is_letter_only:
            return "OTHER"
        if word.endswith("ly"):
            return "OTHER"
        for suffix in self._ADJ_SUFFIXES:
            if word.endswith(suffix) and len(word) > len(suffix) + 1:
                return "ADJ"
        if word.endswith("ed") and len(word) > 3:
            return "VERB"
        for suffix in self._NOUN_SUFFIXES:
            if word.endswith(suffix) and len(word) > len(suffix) + 1:
                return "NOUN"
        return "NOUN"


class SidecarTagger:
    """Passthrough backend reading precomputed tags from a sidecar file.

    The sidecar holds one tab-separated "token<TAB>tag" pair per line, in
    token order.
    """

    def __init__(self, pairs: Sequence[tuple[str, str]]):
        self.pairs = list(pairs)

    @classmethod
    def from_file(cls, path: str | Path) -> "SidecarTagger":
        pairs = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            surface, tag = line.split("\t")
            pairs.append((surface, tag))
        return cls(pairs)

    def tag(self, tokens: Sequence[Token]) -> list[str]:
        if len(tokens) != len(self.pairs):
            raise TaggingError(
                f"sidecar has {len(self.pairs)} annotations for {len(tokens)} tokens",
                min(len(tokens), len(self.pairs)),
            )
        tags = []
        for i, (token, (surface, tag)) in enumerate(zip(tokens, self.pairs)):
            if token.surface != surface:
                raise TaggingError(
                    f"sidecar token {surface!r} does not match input {token.surface!r}", i
                )
            tags.append(tag)
        return tags


def pos_tag(tokens: Sequence[Token], tagger: TaggerBackend) -> list[TaggedToken]:
    tags = tagger.tag(tokens)
    tagged = []
    for i, (token, tag) in enumerate(zip(tokens, tags)):
        if tag not in TAGSET:
            raise TaggingError(f"backend produced tag outside tagset: {tag!r}", i)
        tagged.append(TaggedToken(token, tag))
    return tagged


def strict_noun_phrases(tagged: Sequence[TaggedToken], max_words: int = 6) -> list[StrictNounPhrase]:
    """Chunk maximal DET? ADJ* NOUN+ runs of at most ``max_words`` words.

    Runs longer than the cap yield no phrase at all (discarded, not
    truncated).
    """
    phrases = []
    i = 0
    n = len(tagged)
    while i < n:
        j = i
        if j < n and tagged[j].tag == "DET":
            j += 1
        while j < n and tagged[j].tag == "ADJ":
            j += 1
        noun_start = j
        while j < n and tagged[j].tag == "NOUN":
            j += 1
        if j == noun_start:  # no head noun: not a phrase
            i = max(j, i + 1)
            continue
        length = j - i
        if length <= max_words:
            words = tuple(t.token for t in tagged[i:j])
            phrases.append(StrictNounPhrase(words, (words[0].start, words[-1].end)))
        i = j
    return phrases


def stopword_ratio(tokens: Sequence[Token], lists: WordLists) -> float:
    if not tokens:
        raise UndefinedInputError("stopword_ratio is undefined for an empty token list")
    hits = sum(1 for t in tokens if t.lower() in lists.stop_words)
    return hits / len(tokens)


def contains_verb(tagged: Sequence[TaggedToken]) -> bool:
    return any(t.tag == "VERB" for t in tagged)


def letter_token_ratio(tokens: Sequence[Token]) -> float:
    if not tokens:
        raise UndefinedInputError("letter_token_ratio is undefined for an empty token list")
    return sum(1 for t in tokens if t.is_letter_only) / len(tokens)


# --- language identification ------------------------------------------------

#: Minimum profile hit rate for a confident language call.
LANGUAGE_CONFIDENCE_THRESHOLD = 0.15

_PROFILE_CACHE: dict[str, frozenset[str]] | None = None


def _data_text(name: str) -> str:
    return resources.files("snipmine.data").joinpath(name).read_text(encoding="utf-8")


def _load_profiles() -> dict[str, frozenset[str]]:
    global _PROFILE_CACHE
    if _PROFILE_CACHE is None:
        profiles = {}
        for entry in resources.files("snipmine.data").iterdir():
            name = entry.name
            if name.startswith("profile_") and name.endswith(".txt"):
                code = name[len("profile_"):-len(".txt")]
                words = frozenset(_read_word_list(entry.read_text(encoding="utf-8")))
                profiles[code] = words
        _PROFILE_CACHE = profiles
    return _PROFILE_CACHE


def _read_word_list(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]


def detect_language(text: str) -> str:
    """Identify the language by stop-word-hit scoring over bundled profiles.

    Returns "und" when no profile reaches the confidence threshold; ties
    resolve to the alphabetically first code for determinism.
    """
    tokens = [t.lower() for t in tokenize(text) if t.is_letter_only]
    if not tokens:
        return "und"
    best_code = "und"
    best_score = -1.0
    for code in sorted(_load_profiles()):
        words = _load_profiles()[code]
        score = sum(1 for t in tokens if t in words) / len(tokens)
        if score > best_score:
            best_code, best_score = code, score
    if best_score < LANGUAGE_CONFIDENCE_THRESHOLD:
        return "und"
    return best_code


# --- bundled resources ------------------------------------------------------


def load_word_lists() -> WordLists:
    """Load the bundled stop-word, function-word, and verb lists."""
    return WordLists(
        stop_words=frozenset(_read_word_list(_data_text("stopwords_en.txt"))),
        function_words=frozenset(_read_word_list(_data_text("function_words_en.txt"))),
        verbs_lexicon=frozenset(_read_word_list(_data_text("verbs_en.txt"))),
    )


def load_default_tagger() -> LexiconTagger:
    """Load the bundled lexicon + suffix-rule tagger."""
    lexicon = {}
    for line in _data_text("tagger_lexicon.txt").splitlines():
        if not line.strip():
            continue
        word, tag = line.split("\t")
        lexicon[word] = tag
    verbs = _read_word_list(_data_text("verbs_en.txt"))
    return LexiconTagger(lexicon, verbs)
