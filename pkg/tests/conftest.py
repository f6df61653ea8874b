import pytest

from snipmine.textproc import load_default_tagger, load_word_lists


@pytest.fixture(scope="session")
def word_lists():
    return load_word_lists()


@pytest.fixture(scope="session")
def tagger():
    return load_default_tagger()
