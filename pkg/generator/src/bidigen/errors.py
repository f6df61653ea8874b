"""Exception types shared across the generator."""


class BidigenError(Exception):
    """Base class for all generator errors."""


class EmptyCorpusError(BidigenError, ValueError):
    """A vocabulary or training run was asked to start from no data."""


class ContractViolationError(BidigenError, ValueError):
    """An input record breaks the corpus contract (e.g. bad query span)."""


class TrainingDivergedError(BidigenError):
    """Training produced a non-finite loss; carries the offending epoch."""

    def __init__(self, message: str, epoch: int, losses):
        super().__init__(f"{message} (epoch {epoch})")
        self.epoch = epoch
        self.losses = list(losses)


class EvaluationError(BidigenError):
    """The external scorer could not be invoked; carries its diagnostics."""
