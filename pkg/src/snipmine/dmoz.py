"""Open-directory dump ingestion.

Parses RDF-style content dumps (ExternalPage elements with Title /
Description children) into DirectoryEntry tuples, with a tab-separated
fallback format for fixtures, and filters descriptions with the language,
text-quality, and page-length steps of the mining pipeline.
"""

from __future__ import annotations

import io
import logging
import re
from html import unescape
from pathlib import Path
from typing import IO, Callable, Iterable, Iterator

from .config import PipelineConfig
from .records import DirectoryEntry, DocumentRecord, SnippetTuple
from .textproc import (
    TaggerBackend,
    WordLists,
    contains_verb,
    detect_language,
    pos_tag,
    stopword_ratio,
    tokenize,
)

log = logging.getLogger(__name__)

_PAGE_RE = re.compile(
    r"<ExternalPage\s+about=\"(?P<url>[^\"]*)\"\s*>(?P<body>.*?)</ExternalPage>",
    re.DOTALL,
)
_FIELD_RE = {
    "title": re.compile(r"<(?:d:)?Title>(.*?)</(?:d:)?Title>", re.DOTALL),
    "description": re.compile(r"<(?:d:)?Description>(.*?)</(?:d:)?Description>", re.DOTALL),
    "topic": re.compile(r"<topic>(.*?)</topic>", re.DOTALL),
}


def parse_directory_dump(source: IO[bytes] | bytes | str | Path) -> Iterator[DirectoryEntry]:
    """Yield DirectoryEntry per ExternalPage element carrying a description.

    The source may be the dump content itself (str or bytes), an open
    binary or text stream, or a Path to a dump file. Entries missing a
    description are skipped with a warning. A dump whose first non-blank
    character is not '<' is read as tab-separated
    "url<TAB>title<TAB>description" lines instead.
    """
    text = _read_text(source)
    stripped = text.lstrip()
    if stripped and not stripped.startswith("<"):
        yield from _parse_tsv(text)
        return
    for match in _PAGE_RE.finditer(text):
        url = unescape(match.group("url")).strip()
        body = match.group("body")
        fields = {
            name: unescape(m.group(1)).strip() if (m := pattern.search(body)) else ""
            for name, pattern in _FIELD_RE.items()
        }
        if not url or not fields["description"]:
            log.warning("directory entry without URL or description skipped: %r", url)
            continue
        yield DirectoryEntry(
            url=url,
            title=fields["title"],
            description=fields["description"],
            category_path=fields["topic"],
        )


def _parse_tsv(text: str) -> Iterator[DirectoryEntry]:
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) < 3 or not parts[0].strip() or not parts[2].strip():
            log.warning("malformed directory line %d skipped", lineno)
            continue
        yield DirectoryEntry(url=parts[0].strip(), title=parts[1].strip(),
                             description=parts[2].strip())


def _read_text(source) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, str):
        return source
    if isinstance(source, bytes):
        return source.decode("utf-8")
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def filter_descriptions(
    entries: Iterable[DirectoryEntry],
    documents: Callable[[str], DocumentRecord | None],
    word_lists: WordLists,
    tagger: TaggerBackend,
    config: PipelineConfig | None = None,
) -> list[SnippetTuple]:
    """Apply the language, text-quality, and page-length filters.

    A description survives iff its target document is found, it is
    English, it meets the context text-quality conditions (the
    anchor-specific sub-conditions are vacuous for descriptions), and the
    target has enough words.
    """
    config = config or PipelineConfig()
    survivors = []
    for entry in entries:
        doc = documents(entry.url)
        if doc is None:
            continue
        if detect_language(entry.description) != "en":
            continue
        tokens = tokenize(entry.description)
        if len(tokens) < config.context_min_words:
            continue
        if not contains_verb(pos_tag(tokens, tagger)):
            continue
        if not config.stop_ratio_min <= stopword_ratio(tokens, word_lists) <= config.stop_ratio_max:
            continue
        if len(doc.plain_text.split()) < config.target_min_words:
            continue
        survivors.append(
            SnippetTuple(snippet=entry.description, doc_id=doc.doc_id, provenance="directory")
        )
    return survivors
