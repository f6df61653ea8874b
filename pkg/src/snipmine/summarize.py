"""Query-biased extractive summarization.

Used both to prepare generator inputs (top sentences by query-dependent
TF-IDF, truncated to a word budget) and as the extractive three-sentence
snippet baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .errors import ConfigError
from .textproc import split_sentences, tokenize

_HEADER_KEY = "#docs"


@dataclass
class DocumentFrequencyTable:
    n_docs: int
    df: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_corpus(cls, texts: Iterable[str]) -> "DocumentFrequencyTable":
        df: dict[str, int] = {}
        n = 0
        for text in texts:
            n += 1
            for term in {t.lower() for t in tokenize(text)}:
                df[term] = df.get(term, 0) + 1
        return cls(n, df)

    def idf(self, term: str) -> float:
        return math.log((self.n_docs + 1) / (self.df.get(term, 0) + 1)) + 1.0

    def save(self, out: IO[str] | str | Path) -> None:
        """Write "term<TAB>df" lines under a "#docs<TAB>N" header."""
        if isinstance(out, (str, Path)):
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                self.save(fh)
            return
        out.write(f"{_HEADER_KEY}\t{self.n_docs}\n")
        for term in sorted(self.df):
            out.write(f"{term}\t{self.df[term]}\n")

    @classmethod
    def load(cls, source: IO[str] | str | Path) -> "DocumentFrequencyTable":
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as fh:
                return cls.load(fh)
        lines = [line.rstrip("\n") for line in source if line.strip()]
        if not lines or not lines[0].startswith(_HEADER_KEY + "\t"):
            raise ConfigError("document-frequency table must start with a '#docs<TAB>N' header")
        n_docs = int(lines[0].split("\t")[1])
        df = {}
        for line in lines[1:]:
            term, count = line.split("\t")
            df[term] = int(count)
        return cls(n_docs, df)


def query_tfidf_scores(
    query: str, sentences: list[str], corpus_stats: DocumentFrequencyTable
) -> list[float]:
    """Score each sentence as sum over query terms of tf * idf.

    Term matching is case-folded; an empty query yields all-zero scores.
    """
    query_terms = [t.lower() for t in tokenize(query)]
    scores = []
    for sentence in sentences:
        words = [t.lower() for t in tokenize(sentence)]
        scores.append(
            sum(words.count(term) * corpus_stats.idf(term) for term in set(query_terms))
        )
    return scores


def _top_sentences(
    query: str, document_text: str, corpus_stats: DocumentFrequencyTable, k: int
) -> list[str]:
    spans = split_sentences(document_text)
    sentences = [document_text[a:b] for a, b in spans]
    scores = query_tfidf_scores(query, sentences, corpus_stats)
    ranked = sorted(range(len(sentences)), key=lambda i: (-scores[i], i))[:k]
    return [sentences[i] for i in sorted(ranked)]  # back to document order


def model_input(
    query: str,
    document_text: str,
    corpus_stats: DocumentFrequencyTable,
    top_k: int = 10,
    max_words: int = 500,
) -> str:
    """Top-k sentences by query-biased TF-IDF, document order, word-capped.

    Truncation cuts at a word boundary; the budget covers the document
    part only (the query is not counted).
    """
    text = " ".join(_top_sentences(query, document_text, corpus_stats, top_k))
    words = text.split()
    if len(words) > max_words:
        return " ".join(words[:max_words])
    return text


def extractive_snippet(
    query: str,
    document_text: str,
    corpus_stats: DocumentFrequencyTable,
    sentences: int = 3,
) -> str:
    """Query-biased extractive snippet of up to three sentences."""
    return " ".join(_top_sentences(query, document_text, corpus_stats, sentences))
