"""WARC-style web archive ingestion.

Reads WARC-1.0 record streams (optionally gzipped), yields one
DocumentRecord per http-ok response record, extracts hyperlink anchor
contexts from rendered page text, and builds the URL -> doc_id index
used to resolve link targets.
"""

from __future__ import annotations

import gzip
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator
from urllib.parse import urljoin, urlsplit

from .errors import IngestError
from .htmltext import render_page
from .records import AnchorContextRecord, DocumentRecord
from .urls import normalize_url

log = logging.getLogger(__name__)

#: Characters of rendered text kept on each side of an anchor.
CONTEXT_WINDOW = 1500

_FETCHABLE_SCHEMES = ("http", "https")


@dataclass
class IngestStats:
    records: int = 0
    skipped: int = 0
    url_collisions: int = 0


class PageIndex:
    """Mapping from normalized URL to doc_id; lookups never raise."""

    def __init__(self):
        self._by_url: dict[str, str] = {}
        self.collisions = 0

    def add(self, url: str, doc_id: str) -> None:
        key = normalize_url(url)
        if key in self._by_url:
            self.collisions += 1  # first record wins
        else:
            self._by_url[key] = doc_id

    def lookup(self, url: str) -> str | None:
        try:
            return self._by_url.get(normalize_url(url))
        except ValueError:
            return None

    def __contains__(self, url: str) -> bool:
        return self.lookup(url) is not None

    def __len__(self) -> int:
        return len(self._by_url)


def iterate_records(
    archive: IO[bytes] | bytes | str | Path, stats: IngestStats | None = None
) -> Iterator[DocumentRecord]:
    """Yield DocumentRecords from a WARC stream, in file order.

    Only response-type records with an http-ok payload are yielded.
    Malformed records are skipped with a warning (counted in ``stats``);
    a truncated payload raises IngestError.
    """
    stream = _open_stream(archive)
    stats = stats if stats is not None else IngestStats()
    while True:
        line = _skip_blank(stream)
        if line is None:
            return
        if not line.startswith(b"WARC/"):
            stats.skipped += 1
            log.warning("expected WARC version line, got %r; resyncing", line[:40])
            if not _resync(stream):
                return
            continue
        try:
            headers = _read_headers(stream)
            length = int(headers["content-length"])
        except (KeyError, ValueError) as exc:
            stats.skipped += 1
            log.warning("malformed WARC header block (%s); resyncing", exc)
            if not _resync(stream):
                return
            continue
        payload = stream.read(length)
        if len(payload) < length:
            raise IngestError(
                f"truncated archive: expected {length} payload bytes, got {len(payload)}"
            )
        if headers.get("warc-type", "").lower() != "response":
            continue
        record = _parse_response(headers, payload)
        if record is None:
            stats.skipped += 1
            continue
        stats.records += 1
        yield record


def _open_stream(archive) -> IO[bytes]:
    if isinstance(archive, (str, Path)):
        raw: IO[bytes] = open(archive, "rb")
    elif isinstance(archive, bytes):
        raw = io.BytesIO(archive)
    else:
        raw = archive
    head = raw.peek(2) if hasattr(raw, "peek") else b""
    if not head:
        pos = raw.tell()
        head = raw.read(2)
        raw.seek(pos)
    if head[:2] == b"\x1f\x8b":
        return gzip.GzipFile(fileobj=raw)  # handles per-record gzip members too
    if not hasattr(raw, "peek"):
        return io.BufferedReader(raw)  # type: ignore[arg-type]
    return raw


def _skip_blank(stream: IO[bytes]) -> bytes | None:
    while True:
        line = stream.readline()
        if not line:
            return None
        if line.strip():
            return line


def _resync(stream: IO[bytes]) -> bool:
    """Advance to just before the next WARC version line; False at EOF."""
    while True:
        pos = stream.tell()
        line = stream.readline()
        if not line:
            return False
        if line.startswith(b"WARC/"):
            stream.seek(pos)
            return True


def _read_headers(stream: IO[bytes]) -> dict[str, str]:
    headers: dict[str, str] = {}
    while True:
        line = stream.readline()
        if not line:
            raise ValueError("EOF inside header block")
        text = line.decode("utf-8", "replace").strip()
        if not text:
            return headers
        if ":" not in text:
            raise ValueError(f"bad header line: {text!r}")
        name, value = text.split(":", 1)
        headers[name.strip().lower()] = value.strip()


def _parse_response(headers: dict[str, str], payload: bytes) -> DocumentRecord | None:
    url = headers.get("warc-target-uri", "")
    doc_id = headers.get("warc-trec-id") or headers.get("warc-record-id", "").strip("<>")
    if not url or not doc_id:
        log.warning("response record missing target URI or record id; skipped")
        return None
    sep = payload.find(b"\r\n\r\n")
    if sep < 0:
        sep = payload.find(b"\n\n")
        body_at = sep + 2
    else:
        body_at = sep + 4
    if sep < 0:
        log.warning("response record %s has no HTTP header/body split; skipped", doc_id)
        return None
    status_line = payload[:sep].split(b"\n", 1)[0].decode("latin-1", "replace")
    parts = status_line.split()
    if len(parts) < 2 or parts[1] != "200":
        return None
    body = payload[body_at:].decode("utf-8", "replace")
    return DocumentRecord(doc_id=doc_id, url=url, raw_html=body)


def extract_anchor_contexts(
    doc: DocumentRecord, window: int = CONTEXT_WINDOW
) -> list[AnchorContextRecord]:
    """Extract one record per hyperlink with a resolvable absolute target.

    The context is the rendered plain text up to ``window`` characters on
    each side of the anchor, clamped at document boundaries.
    """
    page = render_page(doc.raw_html)
    out = []
    for anchor in page.anchors:
        target = urljoin(doc.url, anchor.href)
        if urlsplit(target).scheme not in _FETCHABLE_SCHEMES or not urlsplit(target).netloc:
            continue
        ctx_start = max(0, anchor.start - window)
        ctx_end = min(len(page.text), anchor.end + window)
        out.append(
            AnchorContextRecord(
                source_doc_id=doc.doc_id,
                target_url=target,
                anchor_text=page.text[anchor.start:anchor.end],
                context=page.text[ctx_start:ctx_end],
                anchor_span=(anchor.start - ctx_start, anchor.end - ctx_start),
                context_start_in_page=ctx_start,
            )
        )
    return out


def build_page_index(records: Iterable[DocumentRecord]) -> PageIndex:
    index = PageIndex()
    for record in records:
        index.add(record.url, record.doc_id)
    return index


# --- archive writing (fixtures and round-trip tests) -------------------------


def write_warc(records: Iterable[DocumentRecord], out: IO[bytes]) -> int:
    """Serialize documents as WARC-1.0 response records; returns the count."""
    n = 0
    for record in records:
        body = record.raw_html.encode("utf-8")
        http = b"HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n\r\n" + body
        headers = (
            f"WARC/1.0\r\n"
            f"WARC-Type: response\r\n"
            f"WARC-Record-ID: <urn:uuid:{n:08d}>\r\n"
            f"WARC-TREC-ID: {record.doc_id}\r\n"
            f"WARC-Target-URI: {record.url}\r\n"
            f"Content-Length: {len(http)}\r\n"
            f"\r\n"
        ).encode("utf-8")
        out.write(headers)
        out.write(http)
        out.write(b"\r\n\r\n")
        n += 1
    return n
