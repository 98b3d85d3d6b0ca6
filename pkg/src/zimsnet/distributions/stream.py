"""Reproducible, splittable random streams."""

from __future__ import annotations

from typing import Union

import numpy as np

SeedLike = Union[int, np.random.SeedSequence]


class RngStream:
    """
    A counter-based random stream (Philox) rooted at a SeedSequence.

    Identical seeds give bit-identical draw sequences. spawn() derives
    independent child streams deterministically, so per-time-slice draws can
    run on any number of threads without changing results.
    """

    def __init__(self, seed: SeedLike) -> None:
        if isinstance(seed, np.random.SeedSequence):
            self._seq = seed
        else:
            self._seq = np.random.SeedSequence(int(seed))
        self.generator = np.random.Generator(np.random.Philox(self._seq))

    @property
    def seed(self) -> object:
        return self._seq.entropy

    @property
    def seed_sequence(self) -> np.random.SeedSequence:
        return self._seq

    def spawn(self, n: int) -> list[RngStream]:
        """Derive n independent child streams (advances the spawn counter)."""
        return [RngStream(child) for child in self._seq.spawn(int(n))]

    def uniform(self) -> float:
        return float(self.generator.random())

    def normal(self, size=None):
        return self.generator.standard_normal(size)

    def __repr__(self) -> str:
        return f"RngStream(entropy={self._seq.entropy}, spawn_key={self._seq.spawn_key})"
