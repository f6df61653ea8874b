"""Automatic snippet evaluation: ROUGE-1/2/L, text reuse (ROUGE-L
precision against the source document), factuality (strict-noun-phrase
overlap), and pluggable fluency scoring."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Protocol, Sequence

from .errors import UndefinedInputError
from .textproc import TaggerBackend, pos_tag, strict_noun_phrases, tokenize


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @staticmethod
    def from_pr(precision: float, recall: float) -> "RougeScore":
        if precision + recall == 0:
            return RougeScore(precision, recall, 0.0)
        return RougeScore(precision, recall, 2 * precision * recall / (precision + recall))


ZERO_SCORE = RougeScore(0.0, 0.0, 0.0)


def _words(text: str) -> list[str]:
    return [t.lower() for t in tokenize(text)]


def _ngrams(words: Sequence[str], n: int) -> Counter:
    return Counter(tuple(words[i:i + n]) for i in range(len(words) - n + 1))


def rouge_n(candidate: str, reference: str, n: int) -> RougeScore:
    """Clipped n-gram overlap precision/recall/F1 (no stemming, case-folded)."""
    if n not in (1, 2):
        raise ValueError(f"rouge_n supports n in {{1, 2}}, got {n}")
    cand = _ngrams(_words(candidate), n)
    ref = _ngrams(_words(reference), n)
    if not cand or not ref:
        return ZERO_SCORE
    overlap = sum((cand & ref).values())
    return RougeScore.from_pr(overlap / sum(cand.values()), overlap / sum(ref.values()))


def lcs_length(a: Sequence, b: Sequence) -> int:
    """Longest common subsequence length by dynamic programming."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, 1):
            if x == y:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[len(b)]


def rouge_l(candidate: str, reference: str) -> RougeScore:
    """LCS-based precision/recall/F1 over case-folded token sequences."""
    cand = _words(candidate)
    ref = _words(reference)
    if not cand or not ref:
        return ZERO_SCORE
    lcs = lcs_length(cand, ref)
    return RougeScore.from_pr(lcs / len(cand), lcs / len(ref))


def reuse(snippet: str, document_text: str) -> float:
    """Text reuse: ROUGE-L precision of the snippet against its document."""
    return rouge_l(snippet, document_text).precision


def factuality(snippet: str, document_text: str, tagger: TaggerBackend) -> float:
    """Fraction of the snippet's strict noun phrases found in the document.

    Phrase sets are compared after case-folding; a snippet without any
    strict noun phrase scores 0 (the pessimistic consistent choice).
    """
    snippet_phrases = _phrase_set(snippet, tagger)
    if not snippet_phrases:
        return 0.0
    document_phrases = _phrase_set(document_text, tagger)
    return len(snippet_phrases & document_phrases) / len(snippet_phrases)


def _phrase_set(text: str, tagger: TaggerBackend) -> set[str]:
    tagged = pos_tag(tokenize(text), tagger)
    return {phrase.text.lower() for phrase in strict_noun_phrases(tagged)}


class FluencyBackend(Protocol):
    def token_logprobs(self, tokens: Sequence[str]) -> list[float]:
        """Natural-log probability of each token given its history."""
        ...


def fluency(snippet: str, scorer: FluencyBackend) -> float:
    """Perplexity of the snippet under the backend (lower is more fluent)."""
    tokens = _words(snippet)
    if not tokens:
        raise UndefinedInputError("fluency is undefined for an empty snippet")
    logprobs = scorer.token_logprobs(tokens)
    return math.exp(-sum(logprobs) / len(logprobs))


class UniformFluency:
    """Assigns every token probability 1/V; perplexity is exactly V."""

    def __init__(self, vocab_size: int):
        self.vocab_size = vocab_size

    def token_logprobs(self, tokens: Sequence[str]) -> list[float]:
        logp = -math.log(self.vocab_size)
        return [logp] * len(tokens)


class BigramFluency:
    """Add-one-smoothed word bigram language model trained on a corpus.

    Read-only after construction, so safe for concurrent scoring.
    """

    _BOS = "<s>"

    def __init__(self, training_texts: Sequence[str]):
        self.unigrams: Counter = Counter()
        self.bigrams: Counter = Counter()
        vocab: set[str] = set()
        for text in training_texts:
            words = _words(text)
            vocab.update(words)
            prev = self._BOS
            for word in words:
                self.unigrams[prev] += 1
                self.bigrams[(prev, word)] += 1
                prev = word
        self.vocab_size = len(vocab) + 1  # +1 for the unknown token

    def token_logprobs(self, tokens: Sequence[str]) -> list[float]:
        logprobs = []
        prev = self._BOS
        for word in tokens:
            count = self.bigrams.get((prev, word), 0)
            total = self.unigrams.get(prev, 0)
            logprobs.append(math.log((count + 1) / (total + self.vocab_size)))
            prev = word
        return logprobs
