import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidigen import RESERVED_TOKENS, UNK, EmptyCorpusError, Vocab, build_vocab


class TestReservedIds:
    def test_reserved_ids_are_distinct(self):
        vocab = build_vocab(["a"])
        reserved = [vocab.id(token) for token in RESERVED_TOKENS]
        assert len(set(reserved)) == len(RESERVED_TOKENS)
        assert reserved == list(range(len(RESERVED_TOKENS)))

    def test_corpus_token_colliding_with_marker_is_not_duplicated(self):
        vocab = build_vocab(["<unk> word"])
        assert vocab.tokens.count("<unk>") == 1


class TestBuildVocab:
    def test_three_tokens_under_cap(self):
        vocab = build_vocab(["a b", "c"], cap=10)
        assert len(vocab) == 3 + len(RESERVED_TOKENS)

    def test_cap_keeps_most_frequent(self):
        vocab = build_vocab(["a a a b b c"], cap=2)
        assert "a" in vocab and "b" in vocab
        assert "c" not in vocab

    def test_ties_break_lexicographically(self):
        vocab = build_vocab(["b a c"], cap=2)
        assert "a" in vocab and "b" in vocab
        assert "c" not in vocab

    def test_empty_corpus_is_an_error(self):
        with pytest.raises(EmptyCorpusError):
            build_vocab([])
        with pytest.raises(EmptyCorpusError):
            build_vocab(["", "   "])

    def test_unknown_token_maps_to_unk(self):
        vocab = build_vocab(["a b"])
        assert vocab.id("zebra") == UNK


class TestBijection:
    @given(st.lists(st.text(alphabet="abcd", min_size=1, max_size=4),
                    min_size=1, max_size=30))
    def test_token_id_roundtrip(self, words):
        vocab = build_vocab([" ".join(words)])
        for token in vocab.tokens:
            assert vocab.token(vocab.id(token)) == token
        for token_id in range(len(vocab)):
            assert vocab.id(vocab.token(token_id)) == token_id

    def test_duplicate_tokens_rejected(self):
        with pytest.raises(ValueError):
            Vocab(RESERVED_TOKENS + ("a", "a"))
