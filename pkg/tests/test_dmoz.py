import io

from snipmine.config import PipelineConfig
from snipmine.dmoz import filter_descriptions, parse_directory_dump
from snipmine.records import DocumentRecord

RDF_DUMP = """<?xml version="1.0"?>
<RDF>
  <ExternalPage about="http://jokes.example.com/">
    <d:Title>Jokes &amp; Songs</d:Title>
    <d:Description>A collection of humorous writing.</d:Description>
    <topic>Top/Arts/Humor</topic>
  </ExternalPage>
  <ExternalPage about="http://bare.example.com/">
    <d:Title>No description here</d:Title>
  </ExternalPage>
  <ExternalPage about="http://plain.example.com/">
    <Description>Entry with unprefixed tags.</Description>
  </ExternalPage>
</RDF>
"""


class TestParseDirectoryDump:
    def test_rdf_entries(self):
        entries = list(parse_directory_dump(RDF_DUMP))
        assert [e.url for e in entries] == [
            "http://jokes.example.com/",
            "http://plain.example.com/",
        ]
        first = entries[0]
        assert first.title == "Jokes & Songs"  # entity decoded
        assert first.description == "A collection of humorous writing."
        assert first.category_path == "Top/Arts/Humor"

    def test_entry_without_description_skipped(self, caplog):
        with caplog.at_level("WARNING"):
            entries = list(parse_directory_dump(RDF_DUMP))
        assert all(e.description for e in entries)
        assert any("skipped" in r.message for r in caplog.records)

    def test_bytes_and_stream_inputs(self):
        from_bytes = list(parse_directory_dump(RDF_DUMP.encode("utf-8")))
        from_stream = list(parse_directory_dump(io.BytesIO(RDF_DUMP.encode("utf-8"))))
        assert from_bytes == from_stream
        assert len(from_bytes) == 2

    def test_tsv_fallback(self):
        tsv = (
            "http://a.com/\tTitle A\tFirst description\n"
            "\n"
            "http://b.com/\tTitle B\tSecond description\textra ignored\n"
        )
        entries = list(parse_directory_dump(tsv))
        assert [e.url for e in entries] == ["http://a.com/", "http://b.com/"]
        assert entries[0].description == "First description"

    def test_tsv_malformed_line_skipped(self, caplog):
        tsv = "http://a.com/\tonly two fields\nhttp://b.com/\tT\tGood one\n"
        with caplog.at_level("WARNING"):
            entries = list(parse_directory_dump(tsv))
        assert [e.url for e in entries] == ["http://b.com/"]

    def test_empty_dump(self):
        assert list(parse_directory_dump("")) == []


GOOD_DESCRIPTION = " ".join(
    ["village", "fair"] + ["the"] * 20 + ["mill"] * 27 + ["walked"]
)
GERMAN_DESCRIPTION = (
    "der hund war in dem haus und die katze war auch dort aber sie konnte "
    "nicht mit dem hund spielen weil das haus sehr klein war und der mann "
    "hat gesagt dass die tiere im garten spielen sollen wenn es nicht regnet"
)


def _dump_line(url, description):
    return f"{url}\tTitle\t{description}\n"


def _documents(*docs):
    by_url = {d.url: d for d in docs}
    return by_url.get


class TestFilterDescriptions:
    def _target(self, url="http://t.com/page", words=150):
        return DocumentRecord("target-1", url, plain_text="word " * words)

    def test_good_description_survives(self, word_lists, tagger):
        entries = list(parse_directory_dump(_dump_line("http://t.com/page", GOOD_DESCRIPTION)))
        out = filter_descriptions(entries, _documents(self._target()), word_lists, tagger)
        assert len(out) == 1
        assert out[0].provenance == "directory"
        assert out[0].doc_id == "target-1"
        assert out[0].snippet == GOOD_DESCRIPTION

    def test_missing_target_dropped(self, word_lists, tagger):
        entries = list(parse_directory_dump(_dump_line("http://gone.com/", GOOD_DESCRIPTION)))
        assert filter_descriptions(entries, _documents(), word_lists, tagger) == []

    def test_non_english_dropped(self, word_lists, tagger):
        target = self._target("http://t.com/de")
        entries = list(parse_directory_dump(_dump_line("http://t.com/de", GERMAN_DESCRIPTION)))
        assert filter_descriptions(entries, _documents(target), word_lists, tagger) == []

    def test_short_description_dropped(self, word_lists, tagger):
        short = "The village fair opened near the old mill and people walked there."
        entries = list(parse_directory_dump(_dump_line("http://t.com/page", short)))
        out = filter_descriptions(entries, _documents(self._target()), word_lists, tagger)
        assert out == []

    def test_verb_free_description_dropped(self, word_lists, tagger):
        verbless = " ".join(["village", "fair"] + ["the"] * 20 + ["mill"] * 28)
        entries = list(parse_directory_dump(_dump_line("http://t.com/page", verbless)))
        out = filter_descriptions(entries, _documents(self._target()), word_lists, tagger)
        assert out == []

    def test_short_target_page_dropped(self, word_lists, tagger):
        target = self._target(words=99)
        entries = list(parse_directory_dump(_dump_line("http://t.com/page", GOOD_DESCRIPTION)))
        assert filter_descriptions(entries, _documents(target), word_lists, tagger) == []

    def test_target_length_boundary_kept(self, word_lists, tagger):
        target = self._target(words=100)
        entries = list(parse_directory_dump(_dump_line("http://t.com/page", GOOD_DESCRIPTION)))
        out = filter_descriptions(entries, _documents(target), word_lists, tagger)
        assert len(out) == 1

    def test_config_overrides_length_floor(self, word_lists, tagger):
        target = self._target(words=99)
        entries = list(parse_directory_dump(_dump_line("http://t.com/page", GOOD_DESCRIPTION)))
        config = PipelineConfig(target_min_words=50)
        out = filter_descriptions(entries, _documents(target), word_lists, tagger, config)
        assert len(out) == 1
