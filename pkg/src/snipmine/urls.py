"""URL normalization and registrable-domain lookup.

The registrable domain ("second-level domain" in loose parlance) is
computed against a pinned public-suffix snapshot bundled with the
package, so that hosts under multi-label suffixes like co.uk compare
correctly.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from urllib.parse import urlsplit, urlunsplit

from .errors import SnipmineError


class UrlParseError(SnipmineError, ValueError):
    pass


@lru_cache(maxsize=1)
def _public_suffixes() -> frozenset[str]:
    text = resources.files("snipmine.data").joinpath("public_suffixes.txt").read_text("utf-8")
    return frozenset(
        line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


def _host_of(url: str) -> str:
    parts = urlsplit(url)
    host = parts.hostname
    if not host:
        raise UrlParseError(f"URL has no host: {url!r}")
    return host.lower().rstrip(".")


def registrable_domain(url: str) -> str:
    """Return the registrable domain of a URL's host, lowercase.

    The longest matching suffix from the bundled snapshot wins; an
    unmatched TLD falls back to the host's last label. Bare suffixes and
    single-label hosts are returned as-is.
    """
    host = _host_of(url)
    labels = host.split(".")
    suffixes = _public_suffixes()
    best = None
    for k in range(1, len(labels)):  # ascending k: longest matching suffix wins
        candidate = ".".join(labels[k:])
        if candidate in suffixes:
            best = k
            break
    if best is None:
        best = len(labels) - 1  # unknown TLD: last label is the suffix
    if best == 0:
        return host
    return ".".join(labels[best - 1:])


def normalize_url(url: str) -> str:
    """Canonical URL form for index lookups.

    Lowercases scheme and host, strips the fragment, and keeps path and
    query as-is. An empty path becomes "/".
    """
    parts = urlsplit(url)
    host = (parts.hostname or "").lower().rstrip(".")
    if parts.port is not None:
        host = f"{host}:{parts.port}"
    path = parts.path or "/"
    return urlunsplit((parts.scheme.lower(), host, path, parts.query, ""))
