"""Deterministic, named random streams.

Every stochastic component draws from a stream derived from a user seed plus
a tuple of scope labels. A given (seed, scope) pair yields the same sequence
on every platform, and distinct scopes give statistically independent
streams, so adding a draw in one place never perturbs another.
"""
from __future__ import annotations

import hashlib

import numpy as np


def _scope_entropy(scope: tuple) -> list[int]:
    digest = hashlib.sha256(repr(scope).encode("utf-8")).digest()
    return [int.from_bytes(digest[i : i + 8], "little") for i in range(0, 32, 8)]


def stream(seed: int, *scope: object) -> np.random.Generator:
    """Return the generator for the stream named by ``scope`` under ``seed``."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, *_scope_entropy(scope)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *scope: object) -> int:
    """Collapse (seed, scope) into a single reproducible seed.

    Capped at 53 bits so derived seeds survive a round trip through
    JSON consumers that store numbers as IEEE doubles (browsers).
    """
    return _scope_entropy((int(seed) & 0xFFFFFFFFFFFFFFFF, *scope))[0] & ((1 << 53) - 1)
