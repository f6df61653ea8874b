"""The nine-step anchor-context mining pipeline with attrition accounting.

Each step is a keep/drop predicate with a machine-readable drop reason;
run_pipeline applies them in order and records a stats row per step, in
the style of the mining-statistics table (step, remaining, delta).
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable, Iterable, Sequence

from .config import PipelineConfig
from .archive import PageIndex
from .dedup import dedup_group
from .records import AnchorContextRecord, DocumentRecord, SnippetTuple
from .textproc import (
    TaggerBackend,
    WordLists,
    contains_verb,
    detect_language,
    pos_tag,
    split_sentences,
    stopword_ratio,
    tokenize,
)
from .urls import registrable_domain

_WS_RE = re.compile(r"\s+")

# Closed enumeration of drop reasons, for stats and debugging.
REASON_INTRA_SITE = "intra-site"
REASON_MISSING_SOURCE = "missing-source"
REASON_TARGET_UNAVAILABLE = "target-unavailable"
REASON_NON_ENGLISH = "non-english"
REASON_MISSING_TARGET = "missing-target"
REASON_SPAM = "spam"
REASON_STOP_ANCHOR = "stop-anchor"
REASON_ANCHOR_DISTANCE = "anchor-distance"
REASON_IMPROPER_TEXT = "improper-text"
REASON_DUPLICATE = "duplicate"
REASON_TEXT_REUSE = "text-reuse"
REASON_SHORT_PAGE = "short-page"

STOP_ANCHOR_WORDS = ("click", "read", "mail")

STEP_NAMES = [
    "1. Intra-site links",
    "2. Non-existing pages",
    "3. Non-English pages",
    "4. Spam anchors",
    "5. Stop anchors",
    "6. Improper text",
    "7. Duplicated",
    "8. Text reuse",
    "9. Short web pages",
]


@dataclass
class StepResources:
    page_index: PageIndex
    documents: Callable[[str], DocumentRecord | None]
    word_lists: WordLists
    tagger: TaggerBackend
    spam_scores: dict[str, int] = field(default_factory=dict)
    judged_pages: set[str] = field(default_factory=set)

    def target_doc(self, rec: AnchorContextRecord) -> DocumentRecord | None:
        doc_id = self.page_index.lookup(rec.target_url)
        return self.documents(doc_id) if doc_id else None


@dataclass
class PipelineStats:
    rows: list[tuple[str, int, str]] = field(default_factory=list)
    drop_reasons: dict[str, dict[str, int]] = field(default_factory=dict)
    header: list[str] = field(default_factory=list)

    def add_row(self, name: str, remaining: int) -> None:
        if not self.rows:
            self.rows.append((name, remaining, ""))
        else:
            previous = self.rows[-1][1]
            self.rows.append((name, remaining, format_delta(remaining, previous)))

    def render(self) -> str:
        lines = list(self.header)
        lines.append("step\tremaining\tdelta")
        for name, remaining, delta in self.rows:
            lines.append(f"{name}\t{remaining:,}\t{delta}")
        return "\n".join(lines) + "\n"


def format_delta(remaining: int, previous: int) -> str:
    """Render attrition vs the previous step as e.g. "-82.3%".

    One decimal, round half away from zero; an unchanged count renders
    as "-0.0%".
    """
    if previous <= 0:
        return "-0.0%"
    pct = Decimal((previous - remaining) * 100) / Decimal(previous)
    return f"-{pct.quantize(Decimal('0.1'), rounding=ROUND_HALF_UP)}%"


# --- step predicates ----------------------------------------------------------
# Each returns None to keep the record, or a drop reason string.


def step_intra_site(rec: AnchorContextRecord, res: StepResources) -> str | None:
    source = res.documents(rec.source_doc_id)
    if source is None:
        return REASON_MISSING_SOURCE
    try:
        same = registrable_domain(source.url) == registrable_domain(rec.target_url)
    except ValueError:
        return REASON_MISSING_SOURCE
    return REASON_INTRA_SITE if same else None


def step_target_available(rec: AnchorContextRecord, res: StepResources) -> str | None:
    return None if rec.target_url in res.page_index else REASON_TARGET_UNAVAILABLE


def step_target_english(rec: AnchorContextRecord, res: StepResources) -> str | None:
    doc = res.target_doc(rec)
    if doc is None:
        return REASON_MISSING_TARGET
    language = doc.language or detect_language(doc.plain_text)
    return None if language == "en" else REASON_NON_ENGLISH


def step_spam(
    rec: AnchorContextRecord, res: StepResources, keep_percentile: int = 70
) -> str | None:
    doc = res.target_doc(rec)
    if doc is None:
        return REASON_MISSING_TARGET
    judged = doc.doc_id in res.judged_pages or doc.relevance is not None
    if judged:
        return None
    percentile = res.spam_scores.get(doc.doc_id, doc.spam_percentile)
    if percentile is None or percentile < keep_percentile:
        return REASON_SPAM
    return None


def step_stop_anchor(
    rec: AnchorContextRecord,
    neighbors: Sequence[tuple[int, int]],
    min_distance: int = 50,
) -> str | None:
    """Step 5: stop words in the anchor text, or crowded multi-link context.

    ``neighbors`` holds the page-offset spans of the other anchors on the
    same source page, in page order. Both members of a pair closer than
    ``min_distance`` characters are dropped.
    """
    anchor = rec.anchor_text.strip()
    if not anchor:
        return REASON_STOP_ANCHOR
    lowered = anchor.lower()
    if any(word in lowered for word in STOP_ANCHOR_WORDS):
        return REASON_STOP_ANCHOR
    own = rec.anchor_page_span
    for start, end in neighbors:
        if (start, end) == own:
            continue
        gap = start - own[1] if start >= own[1] else own[0] - end
        if gap < min_distance:
            return REASON_ANCHOR_DISTANCE
    return None


def step_improper_text(
    rec: AnchorContextRecord, res: StepResources, config: PipelineConfig | None = None
) -> str | None:
    """Step 6: five text-quality conditions on anchor and context."""
    config = config or PipelineConfig()
    anchor_tokens = tokenize(rec.anchor_text)
    if len(anchor_tokens) > config.anchor_max_words:
        return REASON_IMPROPER_TEXT
    context_tokens = tokenize(rec.context)
    if len(context_tokens) < config.context_min_words:
        return REASON_IMPROPER_TEXT
    sentence = _anchor_sentence(rec)
    if sentence is None or len(tokenize(sentence)) < config.anchor_sentence_min_words:
        return REASON_IMPROPER_TEXT
    if not contains_verb(pos_tag(context_tokens, res.tagger)):
        return REASON_IMPROPER_TEXT
    ratio = stopword_ratio(context_tokens, res.word_lists)
    if not config.stop_ratio_min <= ratio <= config.stop_ratio_max:
        return REASON_IMPROPER_TEXT
    return None


def _anchor_sentence(rec: AnchorContextRecord) -> str | None:
    anchor_start, anchor_end = rec.anchor_span
    mid = (anchor_start + anchor_end) // 2
    for start, end in split_sentences(rec.context):
        if start <= mid < end or (start <= anchor_start and anchor_end <= end):
            return rec.context[start:end]
    return None


def step_text_reuse(rec: AnchorContextRecord, res: StepResources) -> str | None:
    doc = res.target_doc(rec)
    if doc is None or not doc.plain_text:
        return REASON_MISSING_TARGET
    context = _WS_RE.sub(" ", rec.context).strip()
    target = _WS_RE.sub(" ", doc.plain_text).strip()
    return REASON_TEXT_REUSE if context and context in target else None


def step_short_page(
    rec: AnchorContextRecord, res: StepResources, min_words: int = 100
) -> str | None:
    doc = res.target_doc(rec)
    if doc is None or not doc.plain_text:
        return REASON_MISSING_TARGET
    return None if len(doc.plain_text.split()) >= min_words else REASON_SHORT_PAGE


# --- the pipeline -------------------------------------------------------------


def run_pipeline(
    records: Iterable[AnchorContextRecord],
    res: StepResources,
    config: PipelineConfig | None = None,
) -> tuple[list[SnippetTuple], PipelineStats]:
    """Apply steps 1-9 in order; return survivors and the attrition stats.

    Survivors are emitted in (source doc_id, anchor page offset) order so
    the output is identical for any worker count.
    """
    config = config or PipelineConfig()
    stats = PipelineStats(header=config.as_header_lines())
    remaining = sorted(records, key=_record_key)
    stats.add_row("Raw anchor contexts", len(remaining))

    per_record_steps: list[tuple[str, Callable[[AnchorContextRecord], str | None]]] = [
        (STEP_NAMES[0], lambda r: step_intra_site(r, res)),
        (STEP_NAMES[1], lambda r: step_target_available(r, res)),
        (STEP_NAMES[2], lambda r: step_target_english(r, res)),
        (STEP_NAMES[3], lambda r: step_spam(r, res, config.spam_keep_percentile)),
    ]
    for name, predicate in per_record_steps:
        remaining = _apply_step(name, predicate, remaining, stats, config.workers)

    neighbor_spans = _spans_by_page(remaining)
    remaining = _apply_step(
        STEP_NAMES[4],
        lambda r: step_stop_anchor(
            r, neighbor_spans[r.source_doc_id], config.anchor_min_distance
        ),
        remaining,
        stats,
        config.workers,
    )
    remaining = _apply_step(
        STEP_NAMES[5],
        lambda r: step_improper_text(r, res, config),
        remaining,
        stats,
        config.workers,
    )

    # Step 7: near-duplicate removal within each target group.
    groups: dict[str, list[AnchorContextRecord]] = {}
    for record in remaining:
        groups.setdefault(record.target_url, []).append(record)
    survivors: list[AnchorContextRecord] = []
    for key in sorted(groups):
        survivors.extend(dedup_group(groups[key], config.duplicate_cosine))
    dropped = len(remaining) - len(survivors)
    stats.drop_reasons[STEP_NAMES[6]] = {REASON_DUPLICATE: dropped} if dropped else {}
    remaining = sorted(survivors, key=_record_key)
    stats.add_row(STEP_NAMES[6], len(remaining))

    remaining = _apply_step(
        STEP_NAMES[7], lambda r: step_text_reuse(r, res), remaining, stats, config.workers
    )
    remaining = _apply_step(
        STEP_NAMES[8],
        lambda r: step_short_page(r, res, config.target_min_words),
        remaining,
        stats,
        config.workers,
    )

    tuples = []
    for record in remaining:
        doc_id = res.page_index.lookup(record.target_url)
        tuples.append(
            SnippetTuple(
                snippet=record.context,
                doc_id=doc_id or "",
                provenance="anchor-context",
                source_doc_id=record.source_doc_id,
                anchor_offset=record.anchor_page_span[0],
            )
        )
    return tuples, stats


def _record_key(record: AnchorContextRecord):
    return (record.source_doc_id, record.anchor_page_span[0])


def _spans_by_page(records: Sequence[AnchorContextRecord]) -> dict[str, list[tuple[int, int]]]:
    spans: dict[str, list[tuple[int, int]]] = {}
    for record in records:
        spans.setdefault(record.source_doc_id, []).append(record.anchor_page_span)
    for page_spans in spans.values():
        page_spans.sort()
    return spans


def _apply_step(
    name: str,
    predicate: Callable[[AnchorContextRecord], str | None],
    records: list[AnchorContextRecord],
    stats: PipelineStats,
    workers: int,
) -> list[AnchorContextRecord]:
    reasons = _pmap(predicate, records, workers)
    kept = []
    drop_counts: dict[str, int] = {}
    for record, reason in zip(records, reasons):
        if reason is None:
            kept.append(record)
        else:
            drop_counts[reason] = drop_counts.get(reason, 0) + 1
    stats.drop_reasons[name] = drop_counts
    stats.add_row(name, len(kept))
    return kept


def _pmap(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
