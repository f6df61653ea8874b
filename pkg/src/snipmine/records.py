"""Domain records and the corpus interchange format.

Every intermediate artifact is exchanged as line-delimited JSON objects
(UTF-8, one object per line, keys sorted) so that all stages, the CLI,
and external consumers share one schema. Each record type maps 1:1 to
its dataclass fields.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import IO, Iterable, Iterator, Type, TypeVar

T = TypeVar("T")


@dataclass
class DocumentRecord:
    doc_id: str
    url: str
    raw_html: str = ""
    plain_text: str = ""
    language: str | None = None
    spam_percentile: int | None = None
    relevance: int | None = None

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")


@dataclass
class AnchorContextRecord:
    source_doc_id: str
    target_url: str
    anchor_text: str
    context: str
    anchor_span: tuple[int, int]
    context_start_in_page: int = 0  # offset of context[0] in the source page's rendered text

    def __post_init__(self):
        self.anchor_span = tuple(self.anchor_span)  # type: ignore[assignment]
        start, end = self.anchor_span
        if self.context[start:end] != self.anchor_text:
            raise ValueError("anchor_span does not delimit anchor_text within context")

    @property
    def anchor_page_span(self) -> tuple[int, int]:
        start, end = self.anchor_span
        return (self.context_start_in_page + start, self.context_start_in_page + end)


@dataclass
class SnippetTuple:
    snippet: str
    doc_id: str
    provenance: str  # "anchor-context" or "directory"
    source_doc_id: str = ""
    anchor_offset: int = 0

    def __post_init__(self):
        if self.provenance not in ("anchor-context", "directory"):
            raise ValueError(f"unknown provenance: {self.provenance!r}")


@dataclass
class TrainingTriple:
    query: str
    snippet: str
    doc_id: str
    query_span_in_snippet: tuple[int, int]
    provenance: str = "anchor-context"

    def __post_init__(self):
        self.query_span_in_snippet = tuple(self.query_span_in_snippet)  # type: ignore[assignment]
        n_words = len(self.query.split())
        if not 1 <= n_words <= 6:
            raise ValueError(f"query must have 1-6 words, got {n_words}")


@dataclass
class GeneratedSnippet:
    doc_id: str
    query: str
    snippet: str


@dataclass
class DirectoryEntry:
    url: str
    title: str
    description: str
    category_path: str = ""

    def __post_init__(self):
        if not self.description.strip():
            raise ValueError("description must be non-empty")


def to_json(record) -> str:
    return json.dumps(asdict(record), ensure_ascii=False, sort_keys=True)


def from_json(cls: Type[T], line: str) -> T:
    data = json.loads(line)
    names = {f.name for f in fields(cls)}
    return cls(**{k: v for k, v in data.items() if k in names})


def write_jsonl(records: Iterable, out: IO[str] | str | Path) -> int:
    """Write records as one JSON object per line; returns the count."""
    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            return write_jsonl(records, fh)
    n = 0
    for record in records:
        out.write(to_json(record))
        out.write("\n")
        n += 1
    return n


def read_jsonl(cls: Type[T], source: IO[str] | str | Path) -> Iterator[T]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from read_jsonl(cls, fh)
        return
    for line in source:
        line = line.strip()
        if line:
            yield from_json(cls, line)
