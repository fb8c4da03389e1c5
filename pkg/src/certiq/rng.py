"""Counter-based random streams.

Every consumer of randomness asks for a stream keyed by
(global_seed, purpose, indices...). Streams are independent Philox
generators, so results do not depend on how work is scheduled across
workers; within a stream the Philox counter plays the role of the shot
index.
"""

import zlib

import numpy as np


def purpose_code(purpose: str) -> int:
    """Stable 32-bit code for a purpose label."""
    return zlib.crc32(purpose.encode("utf-8"))


class RandomStreams:
    """Factory of reproducible, independent random generators."""

    def __init__(self, global_seed: int):
        if global_seed < 0:
            raise ValueError("global_seed must be non-negative")
        self.global_seed = int(global_seed)

    def _sequence(self, purpose: str, indices: tuple[int, ...]) -> np.random.SeedSequence:
        key = (purpose_code(purpose),) + tuple(int(i) for i in indices)
        return np.random.SeedSequence(entropy=self.global_seed, spawn_key=key)

    def stream(self, purpose: str, *indices: int) -> np.random.Generator:
        """Generator for one purpose and index tuple (e.g. sample index)."""
        return np.random.Generator(np.random.Philox(self._sequence(purpose, indices)))

    def seed(self, purpose: str, *indices: int) -> int:
        """Derived integer seed, for components that take a plain seed."""
        return int(self._sequence(purpose, indices).generate_state(1, dtype=np.uint32)[0])

    def child(self, purpose: str, *indices: int) -> "RandomStreams":
        """Streams for a nested unit of work (e.g. one sweep run)."""
        return RandomStreams(self.seed(purpose, *indices))
