"""Heuristic markup-to-text rendering.

Block-level elements become paragraphs, script/style content is removed,
inline markup is flattened, and hyperlink anchors are tracked with their
offsets in the rendered text. This is not a layout engine: the rendering
only needs to discern blocks of prose and anchor positions.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from html.parser import HTMLParser

log = logging.getLogger(__name__)

_BLOCK_TAGS = frozenset(
    """address article aside blockquote br caption dd div dl dt fieldset
    figcaption figure footer form h1 h2 h3 h4 h5 h6 header hr li main nav
    ol p pre section table td th title tr ul""".split()
)
_SKIP_TAGS = frozenset({"script", "style", "noscript", "template"})

_WS_RE = re.compile(r"\s+")
_TAG_STRIP_RE = re.compile(r"<[^>]*>")


@dataclass(frozen=True)
class RenderedAnchor:
    start: int
    end: int
    href: str

    def text_in(self, rendered_text: str) -> str:
        return rendered_text[self.start:self.end]


@dataclass(frozen=True)
class RenderedPage:
    text: str
    blocks: tuple[str, ...]
    anchors: tuple[RenderedAnchor, ...]


class _Renderer(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.blocks: list[str] = []
        self._finished_len = 0  # length of joined finished blocks incl. separators
        self._buf: list[str] = []
        self._buf_len = 0
        self._skip_depth = 0
        self._anchor_stack: list[tuple[int, str]] = []
        self.anchors: list[RenderedAnchor] = []

    def _pos(self) -> int:
        return self._finished_len + self._buf_len

    def _flush_block(self):
        text = "".join(self._buf).rstrip()
        self._buf = []
        self._buf_len = 0
        if text:
            self.blocks.append(text)
            self._finished_len += len(text) + 1  # +1 for the "\n" separator
        # dropped trailing whitespace never advances the offset counter

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
            return
        if tag in _BLOCK_TAGS:
            self._flush_block()
        if tag == "a":
            href = dict(attrs).get("href") or ""
            self._anchor_stack.append((self._pos(), href))

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            if self._skip_depth:
                self._skip_depth -= 1
            return
        if tag == "a" and self._anchor_stack:
            start, href = self._anchor_stack.pop()
            end = self._pos()
            # drop whitespace the anchor may have trailed into
            while end > start and self._char_at(end - 1).isspace():
                end -= 1
            if href:  # empty anchor texts are kept; later stages filter them
                self.anchors.append(RenderedAnchor(start, end, href))
        if tag in _BLOCK_TAGS:
            self._flush_block()

    def handle_data(self, data):
        if self._skip_depth:
            return
        piece = _WS_RE.sub(" ", data)
        if self._buf_len == 0 or (self._buf and self._buf[-1].endswith(" ")):
            piece = piece.lstrip()
        if self._buf_len == 0 and not piece:
            return
        if piece:
            self._buf.append(piece)
            self._buf_len += len(piece)

    def _char_at(self, pos: int) -> str:
        if pos < self._finished_len:
            return "\n".join(self.blocks)[pos]
        return "".join(self._buf)[pos - self._finished_len]

    def result(self) -> RenderedPage:
        self._flush_block()
        text = "\n".join(self.blocks)
        # anchors recorded inside stripped trailing whitespace are clamped
        # to the text end (they keep their href and an empty anchor text)
        anchors = tuple(
            RenderedAnchor(min(a.start, len(text)), min(a.end, len(text)), a.href)
            for a in self.anchors
        )
        return RenderedPage(text, tuple(self.blocks), anchors)


def render_page(raw_html: str) -> RenderedPage:
    """Render markup to plain text plus anchor offsets.

    Falls back to tag stripping (one best-effort paragraph, no anchors)
    if the lenient parser still chokes on the input.
    """
    try:
        renderer = _Renderer()
        renderer.feed(raw_html)
        renderer.close()
        return renderer.result()
    except Exception:  # pragma: no cover - HTMLParser rarely raises
        log.warning("markup could not be parsed; falling back to tag stripping")
        text = _WS_RE.sub(" ", _TAG_STRIP_RE.sub(" ", raw_html)).strip()
        blocks = (text,) if text else ()
        return RenderedPage(text, blocks, ())


def render_blocks(raw_html: str) -> list[str]:
    """Render markup to a list of paragraph strings."""
    return list(render_page(raw_html).blocks)
