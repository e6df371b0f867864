"""Deterministic seed derivation for independent trial streams."""
from __future__ import annotations

import hashlib


def derive_seed(*parts: object) -> int:
    """Stable 63-bit seed from a tuple of labels.

    Uses sha256 of the string-joined parts, so the stream for one trial never
    depends on scheduling order or on which other parameter points exist.
    """
    text = ":".join(repr(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
