"""Counter-based random substreams for reproducible digit-set draws."""

import hashlib
import struct

import numpy as np
from numpy.random import Generator, Philox


def substream_key(seed: int, level: int, attempt: int) -> np.ndarray:
    """128-bit Philox key from SHA-256 of (seed, level, attempt)."""
    digest = hashlib.sha256(struct.pack("<QQQ", seed, level, attempt)).digest()
    return np.frombuffer(digest[:16], dtype=np.uint64).copy()


class DigitStream:
    """Independent generators for every anchor of one level attempt.

    The key fixes (seed, level, attempt); the anchor index sits in a high
    counter word so the per-anchor streams never overlap.
    """

    def __init__(self, seed: int, level: int, attempt: int = 0):
        self.seed = seed
        self.level = level
        self.attempt = attempt
        self._key = substream_key(seed, level, attempt)

    def generator(self, index: int) -> Generator:
        counter = np.array([0, 0, index, 0], dtype=np.uint64)
        return Generator(Philox(key=self._key, counter=counter))

    def __repr__(self) -> str:
        return f"DigitStream(seed={self.seed}, level={self.level}, attempt={self.attempt})"


def make_generator(seed: int, purpose: int = 0) -> Generator:
    """Seeded generator for sampling work outside the construction."""
    return DigitStream(seed, level=2**32 + purpose).generator(0)
