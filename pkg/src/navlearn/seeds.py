"""Deterministic seed derivation.

Every stochastic component draws from a ``random.Random`` stream derived
from (master seed, role tag, index) via SHA-256, so a single master seed
reproduces a full run bit-for-bit regardless of scheduling or thread count.
Plain ``hash()`` is not used anywhere: string hashing is salted per process.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(master: int, role: str, index: int = 0) -> int:
    """Derive a stable 64-bit sub-seed from (master, role, index)."""
    payload = f"{master}:{role}:{index}".encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


def derive_rng(master: int, role: str, index: int = 0) -> random.Random:
    """A fresh RNG stream for one role/index slot under a master seed."""
    return random.Random(derive_seed(master, role, index))
