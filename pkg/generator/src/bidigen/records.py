"""Corpus interchange records used by the generator.

The mining toolkit exchanges everything as line-delimited JSON objects
(UTF-8, keys sorted). The generator reads training triples and bounded
model inputs from those files and writes generated snippets back in the
same shape, so the two packages only ever meet on disk.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import ContractViolationError


@dataclass
class Triple:
    """One (query, snippet, document) training example."""

    query: str
    snippet: str
    doc_id: str
    query_span_in_snippet: tuple[int, int]

    def __post_init__(self):
        self.query_span_in_snippet = tuple(self.query_span_in_snippet)  # type: ignore[assignment]
        start, end = self.query_span_in_snippet
        if self.snippet[start:end] != self.query:
            raise ContractViolationError(
                f"query span {self.query_span_in_snippet} does not delimit "
                f"{self.query!r} in the snippet"
            )


@dataclass
class ModelInput:
    """A bounded document rendering paired positionally with a triple."""

    doc_id: str
    query: str
    snippet: str  # the prepared document text


def _lines(source: IO[str] | str | Path) -> Iterator[dict]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from _lines(fh)
        return
    for line in source:
        line = line.strip()
        if line:
            yield json.loads(line)


def read_triples(source: IO[str] | str | Path) -> list[Triple]:
    return [
        Triple(d["query"], d["snippet"], d["doc_id"],
               tuple(d["query_span_in_snippet"]))
        for d in _lines(source)
    ]


def read_model_inputs(source: IO[str] | str | Path) -> list[ModelInput]:
    return [ModelInput(d["doc_id"], d["query"], d["snippet"]) for d in _lines(source)]


def write_generated(rows: Iterable[tuple[str, str, str]],
                    out: IO[str] | str | Path) -> int:
    """Write (doc_id, query, snippet) rows as generated-snippet records."""
    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            return write_generated(rows, fh)
    n = 0
    for doc_id, query, snippet in rows:
        record = {"doc_id": doc_id, "query": query, "snippet": snippet}
        out.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
        out.write("\n")
        n += 1
    return n


def pair_inputs(triples: list[Triple], inputs: list[ModelInput]) -> list[str]:
    """Return each triple's document text, pairing the two files by position."""
    if len(triples) != len(inputs):
        raise ContractViolationError(
            f"triples and model inputs differ in length "
            f"({len(triples)} vs {len(inputs)})"
        )
    texts = []
    for triple, prepared in zip(triples, inputs):
        if triple.doc_id != prepared.doc_id:
            raise ContractViolationError(
                f"triple for {triple.doc_id!r} paired with input for "
                f"{prepared.doc_id!r}"
            )
        texts.append(prepared.snippet)
    return texts
