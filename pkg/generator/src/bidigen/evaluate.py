"""Scoring generated snippets through the external metric toolkit.

The generator never imports the mining toolkit: it writes its snippets
in the corpus interchange format, invokes the toolkit's command line
scorer on the files, and returns the resulting table verbatim.
"""

from __future__ import annotations

import json
import subprocess
import tempfile
from pathlib import Path
from typing import Sequence

from .errors import EvaluationError
from .model import BidiModel
from .records import Triple, write_generated
from .vocab import Vocab


def generate_for(model: BidiModel, vocab: Vocab, triples: list[Triple],
                 documents: list[str],
                 beam_width: int = 1) -> list[tuple[str, str, str]]:
    """Generate one (doc_id, query, snippet) row per test triple."""
    return [
        (t.doc_id, t.query, model.generate(vocab, t.query, d, beam_width))
        for t, d in zip(triples, documents)
    ]


def score_rows(triples: list[Triple], generated: list[tuple[str, str, str]],
               document_texts: dict[str, str],
               scorer: Sequence[str] = ("snipmine",)) -> str:
    """Invoke the external scorer on interchange files; return its table."""
    with tempfile.TemporaryDirectory() as tmp:
        base = Path(tmp)
        triples_path = base / "triples.jsonl"
        with open(triples_path, "w", encoding="utf-8") as fh:
            for t in triples:
                fh.write(json.dumps({
                    "query": t.query,
                    "snippet": t.snippet,
                    "doc_id": t.doc_id,
                    "query_span_in_snippet": list(t.query_span_in_snippet),
                    "provenance": "anchor-context",
                }, ensure_ascii=False, sort_keys=True) + "\n")
        generated_path = base / "generated.jsonl"
        write_generated(generated, generated_path)
        docs_path = base / "docs.jsonl"
        with open(docs_path, "w", encoding="utf-8") as fh:
            for doc_id, text in sorted(document_texts.items()):
                fh.write(json.dumps({
                    "doc_id": doc_id,
                    "url": "",
                    "plain_text": text,
                }, ensure_ascii=False, sort_keys=True) + "\n")
        table_path = base / "scores.tsv"
        command = [*scorer, "score",
                   "--triples", str(triples_path),
                   "--generated", str(generated_path),
                   "--docs", str(docs_path),
                   "--out", str(table_path)]
        try:
            result = subprocess.run(command, capture_output=True, text=True)
        except OSError as exc:
            raise EvaluationError(f"could not invoke scorer {scorer!r}: {exc}") from exc
        if result.returncode != 0:
            raise EvaluationError(
                f"scorer exited with {result.returncode}: "
                f"{result.stderr.strip() or result.stdout.strip()}"
            )
        return table_path.read_text(encoding="utf-8")


def evaluate(model: BidiModel, vocab: Vocab, triples: list[Triple],
             documents: list[str], scorer: Sequence[str] = ("snipmine",),
             beam_width: int = 1) -> str:
    """Generate snippets for test triples and return the scorer's table."""
    if not triples:
        return ""
    generated = generate_for(model, vocab, triples, documents, beam_width)
    texts = {t.doc_id: d for t, d in zip(triples, documents)}
    return score_rows(triples, generated, texts, scorer)
