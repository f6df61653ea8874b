"""Training loop for the bidirectional pointer-generator.

Full-batch Adam at toy scale: every epoch accumulates the summed
negative log-likelihood of both decoding directions over all examples
and takes one optimizer step. Everything is pinned to a seed, so the
same corpus and config always produce the same model and loss curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch

from .errors import EmptyCorpusError, TrainingDivergedError
from .model import BidiModel, HParams
from .prepare import PreparedExample, prepare
from .records import Triple
from .vocab import Vocab, build_vocab


@dataclass
class TrainConfig:
    epochs: int = 200
    learning_rate: float = 1e-2
    seed: int = 0
    vocab_cap: int = 5000
    emb_size: int = 32
    hidden_size: int = 64
    max_prev_len: int = 20
    max_next_len: int = 20


@dataclass
class TrainResult:
    model: BidiModel
    vocab: Vocab
    losses: list[float]  # mean per-example loss for each epoch


def prepare_corpus(triples: list[Triple], documents: list[str],
                   vocab: Vocab) -> list[PreparedExample]:
    return [prepare(t, d, vocab) for t, d in zip(triples, documents)]


def train(triples: list[Triple], documents: list[str],
          config: TrainConfig | None = None) -> TrainResult:
    """Train a model on (triple, prepared document text) pairs."""
    config = config or TrainConfig()
    if not triples:
        raise EmptyCorpusError("cannot train on an empty corpus")
    vocab = build_vocab(
        [t.query for t in triples] + [t.snippet for t in triples],
        cap=config.vocab_cap,
    )
    examples = prepare_corpus(triples, documents, vocab)

    torch.manual_seed(config.seed)
    model = BidiModel(HParams(
        vocab_size=len(vocab),
        emb_size=config.emb_size,
        hidden_size=config.hidden_size,
        max_prev_len=config.max_prev_len,
        max_next_len=config.max_next_len,
    ))
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)

    losses: list[float] = []
    for epoch in range(config.epochs):
        optimizer.zero_grad()
        total = sum(model.example_loss(example, vocab) for example in examples)
        value = check_finite(total.item() / len(examples), epoch, losses)
        losses.append(value)
        total.backward()
        optimizer.step()
    return TrainResult(model, vocab, losses)


def check_finite(value: float, epoch: int, losses: list[float]) -> float:
    """Raise with diagnostics if a loss value is not finite."""
    if not math.isfinite(value):
        raise TrainingDivergedError(f"non-finite training loss {value}",
                                    epoch, losses)
    return value


def save_checkpoint(model: BidiModel, vocab: Vocab, path) -> None:
    torch.save({
        "hparams": vars(model.hparams),
        "vocab_tokens": list(vocab.tokens),
        "state_dict": model.state_dict(),
    }, path)


def load_checkpoint(path) -> tuple[BidiModel, Vocab]:
    payload = torch.load(path)
    model = BidiModel(HParams(**payload["hparams"]))
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model, Vocab(tuple(payload["vocab_tokens"]))
