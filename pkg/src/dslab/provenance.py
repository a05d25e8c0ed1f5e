"""Canonical hashing of run parameters for output provenance."""

from __future__ import annotations

import dataclasses
import hashlib


def dataclass_hash(cfg) -> str:
    """Canonical SHA-256 of a config dataclass: sorted k=repr(v) lines."""
    d = dataclasses.asdict(cfg)
    text = "\n".join(f"{k}={d[k]!r}" for k in sorted(d)) + "\n"
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def canonical_text(sections: dict[str, dict[str, str]]) -> str:
    lines = []
    for sec in sorted(sections):
        for key in sorted(sections[sec]):
            lines.append(f"{sec}.{key}={sections[sec][key]}")
    return "\n".join(lines) + "\n"


def config_hash_of(sections: dict[str, dict[str, str]]) -> str:
    return hashlib.sha256(canonical_text(sections).encode("utf-8")).hexdigest()
