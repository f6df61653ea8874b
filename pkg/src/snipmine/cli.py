"""Command-line orchestration for the corpus mining and scoring stages.

Every stage reads and writes the line-delimited corpus interchange
format; stats go to the path given by --stats (tab-separated) and are
echoed to standard error. Outputs carry no timestamps, so identical
inputs and config produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .archive import IngestStats, build_page_index, extract_anchor_contexts, iterate_records
from .config import PipelineConfig, load_config
from .content import extract_content
from .errors import SnipmineError
from .metrics import BigramFluency, factuality, fluency, reuse, rouge_l, rouge_n
from .pipeline import PipelineStats, StepResources, run_pipeline
from .dmoz import filter_descriptions, parse_directory_dump
from .queries import build_triples, split_triples
from .records import (
    DocumentRecord,
    GeneratedSnippet,
    SnippetTuple,
    TrainingTriple,
    read_jsonl,
    write_jsonl,
)
from .summarize import DocumentFrequencyTable, extractive_snippet, model_input
from .textproc import load_default_tagger, load_word_lists
from .urls import normalize_url


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except (SnipmineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snipmine", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("ingest", help="read a web archive into document records")
    p.add_argument("--archive", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_ingest)

    p = sub.add_parser("extract-content", help="fill plain_text via content extraction")
    p.add_argument("--docs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_extract_content)

    p = sub.add_parser("mine-anchors", help="run the full anchor-context mining pipeline")
    p.add_argument("--archive", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--stats")
    p.add_argument("--stats-json")
    p.add_argument("--config")
    p.add_argument("--spam-scores")
    p.add_argument("--qrels")
    p.add_argument("--workers", type=int)
    p.set_defaults(handler=_cmd_mine_anchors)

    p = sub.add_parser("mine-directory", help="filter open-directory descriptions")
    p.add_argument("--dump", required=True)
    p.add_argument("--docs", required=True, help="extracted document records (JSONL)")
    p.add_argument("--out", required=True)
    p.add_argument("--config")
    p.set_defaults(handler=_cmd_mine_directory)

    p = sub.add_parser("gen-queries", help="turn snippet tuples into training triples")
    p.add_argument("--tuples", required=True)
    p.add_argument("--docs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--config")
    p.set_defaults(handler=_cmd_gen_queries)

    p = sub.add_parser("summarize", help="query-biased extractive summaries for triples")
    p.add_argument("--triples", required=True)
    p.add_argument("--docs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=["snippet", "input"], default="snippet")
    p.add_argument("--df-table", help="precomputed document-frequency table")
    p.add_argument("--config")
    p.set_defaults(handler=_cmd_summarize)

    p = sub.add_parser("score", help="score generated snippets against references")
    p.add_argument("--triples", required=True)
    p.add_argument("--generated", required=True)
    p.add_argument("--docs", required=True)
    p.add_argument("--out", help="write the table here instead of stdout")
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("split", help="partition triples by document")
    p.add_argument("--triples", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--validation", type=int, default=10)
    p.add_argument("--test", type=int, default=10)
    p.set_defaults(handler=_cmd_split)

    p = sub.add_parser("report", help="render a machine-readable stats file as a table")
    p.add_argument("--stats-json", required=True)
    p.set_defaults(handler=_cmd_report)

    return parser


def _load_docs(path: str) -> dict[str, DocumentRecord]:
    return {doc.doc_id: doc for doc in read_jsonl(DocumentRecord, path)}


def _cmd_ingest(args) -> int:
    stats = IngestStats()
    count = write_jsonl(iterate_records(args.archive, stats), args.out)
    print(f"ingested {count} records, skipped {stats.skipped}", file=sys.stderr)
    return 0


def _cmd_extract_content(args) -> int:
    lists = load_word_lists()
    write_jsonl(
        (extract_content(doc, lists) for doc in read_jsonl(DocumentRecord, args.docs)),
        args.out,
    )
    return 0


def _read_spam_scores(path: str) -> dict[str, int]:
    scores = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            doc_id, percentile = line.split("\t")
            scores[doc_id] = int(percentile)
    return scores


def _read_qrels(path: str) -> set[str]:
    judged = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        parts = line.split()
        if len(parts) >= 4:
            judged.add(parts[2])  # "topic 0 doc_id judgment"
    return judged


def _cmd_mine_anchors(args) -> int:
    config = load_config(args.config) if args.config else PipelineConfig()
    if args.workers:
        config.workers = args.workers
    lists = load_word_lists()
    tagger = load_default_tagger()

    docs = [extract_content(doc, lists) for doc in iterate_records(args.archive)]
    by_id = {doc.doc_id: doc for doc in docs}
    index = build_page_index(docs)
    contexts = [
        rec for doc in docs for rec in extract_anchor_contexts(doc, config.context_window)
    ]
    res = StepResources(
        page_index=index,
        documents=by_id.get,
        word_lists=lists,
        tagger=tagger,
        spam_scores=_read_spam_scores(args.spam_scores) if args.spam_scores else {},
        judged_pages=_read_qrels(args.qrels) if args.qrels else set(),
    )
    tuples, stats = run_pipeline(contexts, res, config)
    write_jsonl(tuples, args.out)
    _emit_stats(stats, args.stats, args.stats_json)
    return 0


def _emit_stats(stats: PipelineStats, tsv_path: str | None, json_path: str | None) -> None:
    rendered = stats.render()
    print(rendered, file=sys.stderr, end="")
    if tsv_path:
        Path(tsv_path).write_text(rendered, encoding="utf-8")
    if json_path:
        with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
            for name, remaining, delta in stats.rows:
                row = {
                    "step": name,
                    "remaining": remaining,
                    "delta": delta,
                    "drop_reasons": stats.drop_reasons.get(name, {}),
                }
                fh.write(json.dumps(row, sort_keys=True) + "\n")


def _cmd_mine_directory(args) -> int:
    config = load_config(args.config) if args.config else PipelineConfig()
    docs = list(read_jsonl(DocumentRecord, args.docs))
    by_url = {}
    for doc in docs:
        by_url.setdefault(normalize_url(doc.url), doc)
    tuples = filter_descriptions(
        parse_directory_dump(Path(args.dump)),
        lambda url: by_url.get(normalize_url(url)),
        load_word_lists(),
        load_default_tagger(),
        config,
    )
    count = write_jsonl(tuples, args.out)
    print(f"kept {count} directory descriptions", file=sys.stderr)
    return 0


def _cmd_gen_queries(args) -> int:
    config = load_config(args.config) if args.config else PipelineConfig()
    docs = _load_docs(args.docs)
    tuples = read_jsonl(SnippetTuple, args.tuples)
    triples, drops = build_triples(tuples, docs.get, load_default_tagger(), config)
    write_jsonl(triples, args.out)
    print(f"emitted {len(triples)} triples; drops: {drops}", file=sys.stderr)
    return 0


def _cmd_summarize(args) -> int:
    config = load_config(args.config) if args.config else PipelineConfig()
    docs = _load_docs(args.docs)
    if args.df_table:
        table = DocumentFrequencyTable.load(args.df_table)
    else:
        table = DocumentFrequencyTable.from_corpus(d.plain_text for d in docs.values())
    out_records = []
    for triple in read_jsonl(TrainingTriple, args.triples):
        doc = docs.get(triple.doc_id)
        if doc is None:
            continue
        if args.mode == "snippet":
            text = extractive_snippet(
                triple.query, doc.plain_text, table, config.extractive_sentences
            )
        else:
            text = model_input(
                triple.query, doc.plain_text, table, config.top_sentences,
                config.input_max_words,
            )
        out_records.append(GeneratedSnippet(doc_id=triple.doc_id, query=triple.query,
                                            snippet=text))
    write_jsonl(out_records, args.out)
    return 0


def _cmd_score(args) -> int:
    triples = list(read_jsonl(TrainingTriple, args.triples))
    generated = list(read_jsonl(GeneratedSnippet, args.generated))
    if len(triples) != len(generated):
        raise SnipmineError(
            f"triples and generated snippets differ in length "
            f"({len(triples)} vs {len(generated)})"
        )
    docs = _load_docs(args.docs)
    tagger = load_default_tagger()
    scorer = BigramFluency([t.snippet for t in triples]) if triples else BigramFluency([""])

    header = ["doc_id", "query", "rouge1_f", "rouge2_f", "rougeL_f", "fluency",
              "factuality", "reuse"]
    lines = ["\t".join(header)]
    sums = [0.0] * 6
    for triple, gen in zip(triples, generated):
        doc_text = docs[triple.doc_id].plain_text if triple.doc_id in docs else ""
        row = [
            rouge_n(gen.snippet, triple.snippet, 1).f1,
            rouge_n(gen.snippet, triple.snippet, 2).f1,
            rouge_l(gen.snippet, triple.snippet).f1,
            fluency(gen.snippet, scorer) if gen.snippet.strip() else float("inf"),
            factuality(gen.snippet, doc_text, tagger),
            reuse(gen.snippet, doc_text),
        ]
        sums = [s + v for s, v in zip(sums, row)]
        lines.append(
            "\t".join([gen.doc_id, gen.query] + [f"{value:.4f}" for value in row])
        )
    if triples:
        avgs = [s / len(triples) for s in sums]
        lines.append("\t".join(["avg", ""] + [f"{value:.4f}" for value in avgs]))
    table = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
    else:
        sys.stdout.write(table)
    return 0


def _cmd_split(args) -> int:
    triples = read_jsonl(TrainingTriple, args.triples)
    splits = split_triples(triples, args.validation, args.test)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, part in splits.items():
        write_jsonl(part, out_dir / f"{name}.jsonl")
        print(f"{name}: {len(part)} triples", file=sys.stderr)
    return 0


def _cmd_report(args) -> int:
    print("step\tremaining\tdelta")
    with open(args.stats_json, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                row = json.loads(line)
                print(f"{row['step']}\t{row['remaining']:,}\t{row['delta']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
