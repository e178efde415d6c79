"""Search configuration and its line-oriented ``key = value`` file format.

Example::

    # one 'input' line per file: path, format, source tag
    input = data/high.txt triples high-quality
    input = data/curves.txt cremona
    twists = 1, -1, 2, -2
    depth = 2
    budget = 200000
    outdir = out
    checkpoint = out/checkpoint.txt
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from ..curve import is_squarefree_int
from ..isogeny import MAX_DEPTH
from .records import DATABASE_SOURCES, SOURCES

INPUT_FORMATS = ("cremona", "lmfdb", "triples", "desmit-like")
DEFAULT_TWISTS = (1, -1, 2, -2, 3, -3, 5, -5, 6, -6)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class InputSpec:
    path: Path
    format: str
    source: str

    def __post_init__(self):
        if self.format not in INPUT_FORMATS:
            raise ConfigError(f"unknown input format {self.format!r}; expected one of {', '.join(INPUT_FORMATS)}")
        if self.source not in SOURCES:
            raise ConfigError(f"unknown source tag {self.source!r}; expected one of {', '.join(SOURCES)}")
        is_db = self.format in ("cremona", "lmfdb")
        if is_db != (self.source in DATABASE_SOURCES):
            raise ConfigError(f"source {self.source!r} does not fit input format {self.format!r}")


@dataclass(frozen=True)
class SearchConfig:
    inputs: tuple[InputSpec, ...] = ()
    twists: tuple[int, ...] = DEFAULT_TWISTS
    depth: int = 1
    budget: int = 2_000_000
    threshold: float = 1.5
    outdir: Path = Path("output")
    jobs: int = 1
    checkpoint: Optional[Path] = None
    max_c: Optional[int] = None
    smallest_c: Optional[int] = None
    time_limit: Optional[float] = None
    verify_stored: bool = True

    def __post_init__(self):
        if not self.twists:
            raise ConfigError("twist set is empty")
        for d in self.twists:
            if d == 0 or not is_squarefree_int(d):
                raise ConfigError(f"twist {d} is not a nonzero squarefree integer")
        if len(set(self.twists)) != len(self.twists):
            raise ConfigError("twist set has repeated entries")
        if not 1 <= self.depth <= MAX_DEPTH:
            raise ConfigError(f"depth must be between 1 and {MAX_DEPTH}")
        if self.budget <= 0:
            raise ConfigError("budget must be positive")
        if not self.threshold > 0:
            raise ConfigError("threshold must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        for name in ("max_c", "smallest_c"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ConfigError(f"{name} must be positive")
        if self.time_limit is not None and not self.time_limit > 0:
            raise ConfigError("time_limit must be positive")

    def with_overrides(self, **kw) -> "SearchConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _int(key, value):
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def _float(key, value):
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {value!r}") from None


def _bool(key, value):
    low = value.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def parse_config(text: str, base: Path = Path(".")) -> SearchConfig:
    """Parse config text; relative paths resolve against ``base``."""
    kw: dict = {}
    inputs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "input":
                parts = value.split()
                if len(parts) == 2 and parts[1] in ("cremona", "lmfdb"):
                    parts.append(parts[1])
                if len(parts) != 3:
                    raise ConfigError("input: expected 'path format source'")
                inputs.append(InputSpec(base / parts[0], parts[1], parts[2]))
            elif key == "twists":
                kw["twists"] = tuple(_int(key, t) for t in value.replace(",", " ").split())
            elif key in ("depth", "budget", "jobs", "max_c", "smallest_c"):
                kw[key] = _int(key, value)
            elif key in ("threshold", "time_limit"):
                kw[key] = _float(key, value)
            elif key in ("outdir", "checkpoint"):
                kw[key] = base / value
            elif key == "verify_stored":
                kw[key] = _bool(key, value)
            else:
                raise ConfigError(f"unknown key {key!r}")
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return SearchConfig(inputs=tuple(inputs), **kw)


def load_config(path) -> SearchConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, path.parent)
