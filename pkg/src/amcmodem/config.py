"""Flat ``key = value`` text files used for CLI configs and AMC policies."""

from __future__ import annotations

from .errors import ConfigurationError


def parse_kv(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment, blank lines are skipped.

    Keys are normalized to lower case with ``_`` replaced by ``-`` so that a
    file can spell ``ebn0_start`` or ``ebn0-start``.
    """
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            key, sep, value = line.partition(":")
        key = key.strip().lower().replace("_", "-")
        if not sep or not key:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key in out:
            raise ConfigurationError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value.strip()
    return out


def format_kv(items) -> str:
    return "".join(f"{k} = {v}\n" for k, v in items)
