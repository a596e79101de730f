"""Deterministic sub-seed derivation.

One 64-bit root seed per run; every component draws sub-seeds by stable
hashing of (root, label, index), so results are reproducible regardless of
evaluation order or parallelism.
"""

from __future__ import annotations

import hashlib


def derive_seed(root: int, label: str, index: int = 0) -> int:
    data = f"{root}\x1f{label}\x1f{index}".encode()
    return int.from_bytes(hashlib.sha256(data).digest()[:8], "big")
