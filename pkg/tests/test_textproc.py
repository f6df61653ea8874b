import pytest
from hypothesis import given
from hypothesis import strategies as st

from snipmine.errors import TaggingError, UndefinedInputError
from snipmine.textproc import (
    SidecarTagger,
    TaggedToken,
    Token,
    contains_verb,
    detect_language,
    letter_token_ratio,
    pos_tag,
    split_sentences,
    stopword_ratio,
    strict_noun_phrases,
    tokenize,
)


class TestTokenize:
    def test_empty(self):
        assert tokenize("") == []

    def test_word_and_punctuation(self):
        assert [t.surface for t in tokenize("The cat.")] == ["The", "cat", "."]

    def test_offsets_reconstruct_input(self):
        text = "e-mail me"
        for token in tokenize(text):
            assert text[token.start:token.end] == token.surface

    def test_letter_only_flag(self):
        tokens = tokenize("abc 123 x9")
        assert [t.is_letter_only for t in tokens] == [True, False, False]

    @given(st.text(max_size=200))
    def test_offset_round_trip(self, text):
        tokens = tokenize(text)
        for token in tokens:
            assert text[token.start:token.end] == token.surface
        # ordered and non-overlapping
        for a, b in zip(tokens, tokens[1:]):
            assert a.end <= b.start


class TestSplitSentences:
    def test_two_sentences(self):
        assert len(split_sentences("A. B.")) == 2

    def test_no_terminator(self):
        assert split_sentences("no terminator") == [(0, 13)]

    def test_empty(self):
        assert split_sentences("") == []

    def test_abbreviation_not_a_boundary(self):
        spans = split_sentences("Dr. Smith wrote this. It is short.")
        assert len(spans) == 2

    def test_lowercase_continuation_not_a_boundary(self):
        assert len(split_sentences("approx. one half")) == 1

    @given(st.text(max_size=300))
    def test_spans_ordered_and_cover_nonspace(self, text):
        spans = split_sentences(text)
        for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
            assert b1 <= a2
        covered = set()
        for a, b in spans:
            assert a < b
            covered.update(range(a, b))
        for i, ch in enumerate(text):
            if not ch.isspace():
                assert i in covered


class TestPosTag:
    def test_empty(self, tagger):
        assert pos_tag([], tagger) == []

    def test_builtin_lexicon(self, tagger):
        tags = [t.tag for t in pos_tag(tokenize("the big car"), tagger)]
        assert tags == ["DET", "ADJ", "NOUN"]

    def test_verb_from_lexicon(self, tagger):
        tags = [t.tag for t in pos_tag(tokenize("the car drove"), tagger)]
        assert tags == ["DET", "NOUN", "VERB"]

    def test_sidecar_passthrough(self):
        tokens = tokenize("alpha beta")
        sidecar = SidecarTagger([("alpha", "NOUN"), ("beta", "VERB")])
        assert [t.tag for t in pos_tag(tokens, sidecar)] == ["NOUN", "VERB"]

    def test_sidecar_from_file(self, tmp_path):
        path = tmp_path / "tags.tsv"
        path.write_text("alpha\tNOUN\nbeta\tVERB\n", encoding="utf-8")
        sidecar = SidecarTagger.from_file(path)
        assert [t.tag for t in pos_tag(tokenize("alpha beta"), sidecar)] == ["NOUN", "VERB"]

    def test_sidecar_mismatch_reports_index(self):
        sidecar = SidecarTagger([("alpha", "NOUN")])
        with pytest.raises(TaggingError) as err:
            pos_tag(tokenize("alpha beta"), sidecar)
        assert err.value.token_index == 1


def _tagged(tag_string: str) -> list[TaggedToken]:
    tags = tag_string.split()
    tokens = []
    pos = 0
    for i, tag in enumerate(tags):
        word = f"w{i}"
        tokens.append(TaggedToken(Token(word, pos, pos + len(word), True), tag))
        pos += len(word) + 1
    return tokens


class TestStrictNounPhrases:
    def test_hand_chunking(self, tagger):
        tagged = pos_tag(tokenize("the big red car drove"), tagger)
        assert [p.text for p in strict_noun_phrases(tagged)] == ["the big red car"]

    def test_seven_word_run_discarded(self):
        assert strict_noun_phrases(_tagged("DET ADJ ADJ ADJ ADJ NOUN NOUN")) == []

    def test_no_nominal_material(self):
        assert strict_noun_phrases(_tagged("VERB VERB")) == []

    def test_multiple_runs(self):
        phrases = strict_noun_phrases(_tagged("DET NOUN VERB ADJ NOUN"))
        assert [len(p.words) for p in phrases] == [2, 2]

    def test_final_word_is_noun(self):
        phrases = strict_noun_phrases(_tagged("DET ADJ NOUN ADJ"))
        assert len(phrases) == 1 and len(phrases[0].words) == 3

    @given(st.lists(st.sampled_from(["DET", "ADJ", "NOUN", "VERB", "OTHER"]), max_size=30))
    def test_phrase_shape_property(self, tags):
        tagged = _tagged(" ".join(tags)) if tags else []
        by_span = {t.token.start: t.tag for t in tagged}
        for phrase in strict_noun_phrases(tagged):
            assert 1 <= len(phrase.words) <= 6
            phrase_tags = [by_span[w.start] for w in phrase.words]
            assert set(phrase_tags) <= {"DET", "ADJ", "NOUN"}
            assert phrase_tags[-1] == "NOUN"


class TestRatios:
    def test_all_stop_words(self, word_lists):
        assert stopword_ratio(tokenize("the and of"), word_lists) == 1.0

    def test_no_stop_words(self, word_lists):
        assert stopword_ratio(tokenize("cat sat mat"), word_lists) == 0.0

    def test_hand_count(self, word_lists):
        # the, on, the are stop words; cat, sat, mat are not
        assert stopword_ratio(tokenize("the cat sat on the mat"), word_lists) == 0.5

    def test_empty_is_undefined(self, word_lists):
        with pytest.raises(UndefinedInputError):
            stopword_ratio([], word_lists)

    def test_letter_ratio_trivials(self):
        assert letter_token_ratio(tokenize("abc def")) == 1.0
        assert letter_token_ratio(tokenize("123 456")) == 0.0
        assert letter_token_ratio(tokenize("abc 123 x9 def")) == 0.5

    def test_letter_ratio_empty_is_undefined(self):
        with pytest.raises(UndefinedInputError):
            letter_token_ratio([])

    @given(st.text(alphabet="ab1 ", min_size=1, max_size=60))
    def test_monotonicity(self, word_lists, text):
        tokens = tokenize(text)
        if not tokens:
            return
        before = stopword_ratio(tokens, word_lists)
        after = stopword_ratio(tokenize(text + " the"), word_lists)
        assert after >= before  # appending a stop word is non-decreasing
        letter_before = letter_token_ratio(tokens)
        letter_after = letter_token_ratio(tokenize(text + " 9"))
        assert letter_after <= letter_before


class TestContainsVerb:
    def test_all_nouns(self):
        assert contains_verb(_tagged("NOUN NOUN")) is False

    def test_one_verb(self):
        assert contains_verb(_tagged("NOUN VERB NOUN")) is True

    def test_empty(self):
        assert contains_verb([]) is False


ENGLISH_FIXTURE = (
    "the house was on the hill and they could see that it was from there "
    "that all of the people would come when the day was over and the work "
    "had been done for them so that each of these could be with the other"
)
GERMAN_FIXTURE = (
    "der hund war in dem haus und die katze war auch dort aber sie konnte "
    "nicht mit dem hund spielen weil das haus sehr klein war und der mann "
    "hat gesagt dass die tiere nur im garten spielen sollen wenn es nicht regnet"
)


class TestDetectLanguage:
    def test_english_fixture(self):
        assert detect_language(ENGLISH_FIXTURE) == "en"

    def test_german_fixture(self):
        assert detect_language(GERMAN_FIXTURE) == "de"

    def test_empty_is_undetermined(self):
        assert detect_language("") == "und"

    def test_gibberish_is_undetermined(self):
        assert detect_language("zzxqv frobnik glorp wibble") == "und"

    def test_deterministic(self):
        assert detect_language(ENGLISH_FIXTURE) == detect_language(ENGLISH_FIXTURE)
