"""Command line interface: train, generate, evaluate.

Triples and bounded model inputs come from the mining toolkit's files
(paired by position); generated snippets go back out in the same
line-delimited JSON shape.
"""

from __future__ import annotations

import argparse
import sys

from .errors import BidigenError
from .evaluate import evaluate, generate_for
from .records import pair_inputs, read_model_inputs, read_triples, write_generated
from .training import TrainConfig, load_checkpoint, save_checkpoint, train


def _load_pairs(args):
    triples = read_triples(args.triples)
    documents = pair_inputs(triples, read_model_inputs(args.inputs))
    return triples, documents


def _cmd_train(args) -> int:
    triples, documents = _load_pairs(args)
    config = TrainConfig(epochs=args.epochs, learning_rate=args.lr,
                         seed=args.seed, vocab_cap=args.vocab_cap,
                         emb_size=args.emb_size, hidden_size=args.hidden_size)
    result = train(triples, documents, config)
    save_checkpoint(result.model, result.vocab, args.out)
    print(f"trained on {len(triples)} triples: "
          f"loss {result.losses[0]:.4f} -> {result.losses[-1]:.4f}")
    return 0


def _cmd_generate(args) -> int:
    triples, documents = _load_pairs(args)
    model, vocab = load_checkpoint(args.model)
    rows = generate_for(model, vocab, triples, documents, beam_width=args.beam)
    write_generated(rows, args.out)
    return 0


def _cmd_evaluate(args) -> int:
    triples, documents = _load_pairs(args)
    model, vocab = load_checkpoint(args.model)
    table = evaluate(model, vocab, triples, documents,
                     scorer=args.scorer.split(), beam_width=args.beam)
    sys.stdout.write(table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bidigen",
        description="toy bidirectional pointer-generator for query-anchored snippets",
    )
    sub = parser.add_subparsers(dest="command")

    def add(name, func, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.set_defaults(func=func)
        cmd.add_argument("--triples", required=True,
                         help="training-triple records (line-delimited JSON)")
        cmd.add_argument("--inputs", required=True,
                         help="bounded model inputs paired by position")
        return cmd

    cmd = add("train", _cmd_train, "train a model and write a checkpoint")
    cmd.add_argument("--out", required=True, help="checkpoint path")
    cmd.add_argument("--epochs", type=int, default=200)
    cmd.add_argument("--lr", type=float, default=1e-2)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--vocab-cap", type=int, default=5000)
    cmd.add_argument("--emb-size", type=int, default=32)
    cmd.add_argument("--hidden-size", type=int, default=64)

    cmd = add("generate", _cmd_generate, "generate snippets for test triples")
    cmd.add_argument("--model", required=True, help="checkpoint path")
    cmd.add_argument("--out", required=True, help="generated-snippet records")
    cmd.add_argument("--beam", type=int, default=1,
                     help="beam width (1 = greedy)")

    cmd = add("evaluate", _cmd_evaluate, "generate and score via the external scorer")
    cmd.add_argument("--model", required=True, help="checkpoint path")
    cmd.add_argument("--scorer", default="snipmine",
                     help="scorer command (default: snipmine)")
    cmd.add_argument("--beam", type=int, default=1)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (BidigenError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
