import pytest

from bidigen import (
    EOS_NEXT,
    EOS_PREV,
    SEP,
    UNK,
    ContractViolationError,
    Triple,
    build_vocab,
    extended_token,
    prepare,
)


def _vocab(*texts):
    return build_vocab(texts)


class TestSnippetSplit:
    def test_snippet_equal_to_query_gives_bare_end_markers(self):
        triple = Triple("old mill", "old mill", "d", (0, 8))
        example = prepare(triple, "some document text", _vocab("old mill"))
        assert example.prev_target == [EOS_PREV]
        assert example.next_target == [EOS_NEXT]

    def test_split_at_query_span(self):
        triple = Triple("Q", "A B Q C", "d", (4, 5))
        vocab = _vocab("A B Q C")
        example = prepare(triple, "A B Q C", vocab)
        # before-query tokens are stored reversed: nearest to the query first
        assert example.prev_target == [vocab.id("B"), vocab.id("A"), EOS_PREV]
        assert example.next_target == [vocab.id("C"), EOS_NEXT]

    def test_bad_span_is_a_contract_violation(self):
        with pytest.raises(ContractViolationError):
            Triple("Q", "A B Q C", "d", (0, 1))


class TestSourceLayout:
    def test_query_separator_document(self):
        triple = Triple("Q", "A Q B", "d", (2, 3))
        vocab = _vocab("A Q B x y")
        example = prepare(triple, "x y", vocab)
        assert example.source_ids == [vocab.id("Q"), SEP, vocab.id("x"), vocab.id("y")]
        assert example.source_tokens == ["Q", "<sep>", "x", "y"]

    def test_in_vocab_source_positions_keep_vocab_ids(self):
        triple = Triple("Q", "Q", "d", (0, 1))
        vocab = _vocab("Q x")
        example = prepare(triple, "x", vocab)
        assert example.source_extended_ids == example.source_ids
        assert example.source_oov == []


class TestCopyIndices:
    def test_oov_snippet_token_in_document_gets_copy_index(self):
        # "zarf" is absent from the vocabulary but present in the document
        triple = Triple("Q", "Q zarf", "d", (0, 1))
        vocab = _vocab("Q a b")
        example = prepare(triple, "a zarf b", vocab)
        copy_id = example.next_target[0]
        assert copy_id >= len(vocab)
        assert extended_token(copy_id, vocab, example.source_oov) == "zarf"

    def test_oov_token_absent_from_source_collapses_to_unk(self):
        triple = Triple("Q", "Q zarf", "d", (0, 1))
        vocab = _vocab("Q a b")
        example = prepare(triple, "a b", vocab)
        assert example.next_target == [UNK, EOS_NEXT]

    def test_repeated_oov_source_token_shares_one_copy_id(self):
        triple = Triple("Q", "Q", "d", (0, 1))
        vocab = _vocab("Q")
        example = prepare(triple, "zarf zarf", vocab)
        assert len(example.source_oov) == 1
        assert example.source_extended_ids[-2:] == [len(vocab), len(vocab)]
