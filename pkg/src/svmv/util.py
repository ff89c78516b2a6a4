"""Small shared helpers."""

from __future__ import annotations

import hashlib


def stable_fingerprint(value) -> str:
    """Order- and process-independent digest of a nested value.

    Unordered containers are fingerprinted element-wise and sorted, so the
    result does not depend on hash randomisation.  Leaf values fall back to
    ``repr``, which must itself be deterministic.
    """
    return hashlib.sha256(_canon(value).encode()).hexdigest()[:16]


def _canon(value) -> str:
    digest = getattr(value, "digest", None)
    if isinstance(digest, str):
        return "view:" + digest
    if isinstance(value, (list, tuple)):
        return "t(" + ",".join(_canon(x) for x in value) + ")"
    if isinstance(value, dict):
        items = sorted((_canon(k), _canon(v)) for k, v in value.items())
        return "d{" + ",".join(k + ":" + v for k, v in items) + "}"
    if isinstance(value, (set, frozenset)):
        return "s{" + ",".join(sorted(_canon(x) for x in value)) + "}"
    return repr(value)


def derive_seed(base_seed: int, label: str) -> int:
    """Stable per-component seed derived from a base seed and a label."""
    blob = f"{base_seed}:{label}".encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")
