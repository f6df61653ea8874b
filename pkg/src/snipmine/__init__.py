"""snipmine: mining and evaluation toolkit for query-biased snippet
corpora built from web archives and web directories."""

__version__ = "0.1.0"
