"""Query generation: strict-noun-phrase queries occurring in both the
snippet surrogate and the document, at most three per tuple."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .config import PipelineConfig
from .dedup import stable_hash
from .records import DocumentRecord, SnippetTuple, TrainingTriple
from .textproc import TaggerBackend, pos_tag, strict_noun_phrases, tokenize


@dataclass(frozen=True)
class QueryCandidate:
    query: str
    span_in_snippet: tuple[int, int]
    score: int


def candidate_queries(
    snippet: str,
    document_text: str,
    tagger: TaggerBackend,
    max_words: int = 6,
) -> list[QueryCandidate]:
    """Rank the snippet's strict noun phrases that also occur in the document.

    The leading article is stripped from the emitted query. Matching is
    case-insensitive over token sequences. Score is document frequency
    times snippet frequency; ties break toward longer phrases, then
    lexicographically.
    """
    snippet_tokens = tokenize(snippet)
    doc_words = [t.lower() for t in tokenize(document_text)]
    snippet_words = [t.lower() for t in snippet_tokens]
    tagged = pos_tag(snippet_tokens, tagger)

    seen: set[tuple[str, ...]] = set()
    candidates = []
    for phrase in strict_noun_phrases(tagged, max_words):
        words = list(phrase.words)
        tags_by_start = {t.token.start: t.tag for t in tagged}
        if tags_by_start.get(words[0].start) == "DET":
            words = words[1:]
        if not words:
            continue
        key = tuple(w.lower() for w in words)
        if key in seen:
            continue
        doc_freq = _count_subsequence(doc_words, key)
        if doc_freq == 0:
            continue
        seen.add(key)
        snippet_freq = _count_subsequence(snippet_words, key)
        candidates.append(
            QueryCandidate(
                query=" ".join(w.surface for w in words),
                span_in_snippet=(words[0].start, words[-1].end),
                score=doc_freq * snippet_freq,
            )
        )
    candidates.sort(key=lambda c: (-c.score, -len(c.query.split()), c.query.lower()))
    return candidates


def _count_subsequence(words: list[str], needle: tuple[str, ...]) -> int:
    n = len(needle)
    if n == 0 or n > len(words):
        return 0
    return sum(1 for i in range(len(words) - n + 1) if tuple(words[i:i + n]) == needle)


def build_triples(
    tuples: Iterable[SnippetTuple],
    documents: Callable[[str], DocumentRecord | None],
    tagger: TaggerBackend,
    config: PipelineConfig | None = None,
) -> tuple[list[TrainingTriple], dict[str, int]]:
    """Emit at most ``max_queries_per_tuple`` triples per snippet tuple.

    Tuples with an unresolvable document or no dual-occurrence candidate
    are dropped; drop counts are returned alongside the triples.
    """
    config = config or PipelineConfig()
    triples = []
    drops = {"unresolvable-document": 0, "no-candidates": 0}
    for snippet_tuple in tuples:
        doc = documents(snippet_tuple.doc_id)
        if doc is None or not doc.plain_text:
            drops["unresolvable-document"] += 1
            continue
        candidates = candidate_queries(
            snippet_tuple.snippet, doc.plain_text, tagger, config.phrase_max_words
        )
        if not candidates:
            drops["no-candidates"] += 1
            continue
        for candidate in candidates[: config.max_queries_per_tuple]:
            triples.append(
                TrainingTriple(
                    query=candidate.query,
                    snippet=snippet_tuple.snippet,
                    doc_id=snippet_tuple.doc_id,
                    query_span_in_snippet=candidate.span_in_snippet,
                    provenance=snippet_tuple.provenance,
                )
            )
    return triples, drops


def split_triples(
    triples: Iterable[TrainingTriple],
    validation_percent: int = 10,
    test_percent: int = 10,
) -> dict[str, list[TrainingTriple]]:
    """Partition triples by document so each document lands in one split.

    The split is a deterministic function of the doc_id (pinned hash), so
    re-running yields identical partitions.
    """
    splits: dict[str, list[TrainingTriple]] = {"train": [], "validation": [], "test": []}
    for triple in triples:
        bucket = stable_hash(triple.doc_id) % 100
        if bucket < test_percent:
            splits["test"].append(triple)
        elif bucket < test_percent + validation_percent:
            splits["validation"].append(triple)
        else:
            splits["train"].append(triple)
    return splits
