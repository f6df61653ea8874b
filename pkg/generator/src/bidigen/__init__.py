"""Toy-scale bidirectional pointer-generator for query-anchored snippets."""

from .errors import (
    BidigenError,
    ContractViolationError,
    EmptyCorpusError,
    EvaluationError,
    TrainingDivergedError,
)
from .evaluate import evaluate, generate_for, score_rows
from .model import BidiModel, HParams
from .prepare import PreparedExample, extended_token, prepare
from .records import ModelInput, Triple, pair_inputs, read_model_inputs, read_triples, write_generated
from .training import TrainConfig, TrainResult, load_checkpoint, save_checkpoint, train
from .vocab import (
    BOS_NEXT,
    BOS_PREV,
    EOS_NEXT,
    EOS_PREV,
    PAD,
    RESERVED_TOKENS,
    SEP,
    UNK,
    Vocab,
    build_vocab,
)

__all__ = [name for name in dir() if not name.startswith("_")]
