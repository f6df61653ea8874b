"""Pipeline thresholds and their flat key=value configuration file.

Every threshold defaults to the mining pipeline's published value and is
overridable via the config file; effective values are echoed into the
stats report header for provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError


@dataclass
class PipelineConfig:
    context_window: int = 1500          # chars kept on each side of an anchor
    spam_keep_percentile: int = 70      # keep targets at or above this percentile
    anchor_max_words: int = 10
    context_min_words: int = 50
    anchor_sentence_min_words: int = 10
    stop_ratio_min: float = 0.10        # inclusive bounds
    stop_ratio_max: float = 0.70
    anchor_min_distance: int = 50       # chars between neighboring anchors
    duplicate_cosine: float = 0.9
    target_min_words: int = 100
    phrase_max_words: int = 6
    max_queries_per_tuple: int = 3
    top_sentences: int = 10             # model-input sentence budget
    input_max_words: int = 500
    extractive_sentences: int = 3
    workers: int = 1

    def as_header_lines(self) -> list[str]:
        # workers is an execution detail, not a mining threshold; leaving
        # it out keeps reports byte-identical across worker counts
        return [
            f"# {f.name}={getattr(self, f.name)}"
            for f in fields(self)
            if f.name != "workers"
        ]


def load_config(path: str | Path) -> PipelineConfig:
    """Parse a flat "key=value" config file ('#' starts a comment)."""
    config = PipelineConfig()
    known = {f.name: f.type for f in fields(PipelineConfig)}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        current = getattr(config, key)
        try:
            setattr(config, key, type(current)(value))
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return config
