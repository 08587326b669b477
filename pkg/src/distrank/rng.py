"""Reproducible random streams for seeded, optionally parallel Monte Carlo.

Every piece of randomness in the library is derived from an :class:`RngSeed`
(a root seed plus a substream path) through a counter-based Philox generator,
so that replication ``r`` of cell ``c`` can be regenerated in isolation and
results do not depend on how work is split across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["RngSeed", "as_seed"]


@dataclass(frozen=True)
class RngSeed:
    """Root seed plus a substream path.

    Equal ``(seed, stream)`` pairs produce bit-identical output sequences,
    independent of platform, process or thread layout.  ``stream`` may be a
    single integer or a tuple of integers (e.g. ``(cell, block)``).
    """

    seed: int
    stream: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        stream = self.stream
        if isinstance(stream, int):
            stream = (stream,)
        object.__setattr__(self, "stream", tuple(int(s) for s in stream))

    def generator(self, *path: int) -> np.random.Generator:
        """A fresh generator for this stream, optionally descended by `path`.

        ``path`` extends the substream key, e.g. ``seed.generator(cell, block)``
        for replication block `block` of experiment cell `cell`.
        """
        key = np.random.SeedSequence(self.seed, spawn_key=(*self.stream, *path))
        return np.random.Generator(np.random.Philox(key))

    def substream(self, *path: int) -> "RngSeed":
        return RngSeed(self.seed, self.stream + tuple(int(p) for p in path))


def as_seed(seed: RngSeed | int | None) -> RngSeed:
    """Coerce an integer or None into an RngSeed (None means seed 0)."""
    if isinstance(seed, RngSeed):
        return seed
    if seed is None:
        return RngSeed(0)
    return RngSeed(int(seed))
