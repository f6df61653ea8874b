"""Skips the whole directory when the generator package is not installed."""

import importlib.util

import pytest

HAVE_BIDIGEN = importlib.util.find_spec("bidigen") is not None

# the mining toolkit's suite must run even when this package is absent
collect_ignore_glob = [] if HAVE_BIDIGEN else ["test_*.py", "genfixtures.py"]

if HAVE_BIDIGEN:
    from bidigen import TrainConfig, train

    import genfixtures

    @pytest.fixture(scope="session")
    def toy_trained():
        """A lightly trained model over the shared toy corpus."""
        triples, documents = genfixtures.toy_corpus()
        result = train(triples, documents, TrainConfig(epochs=40, seed=3))
        return result, triples, documents
