"""Seeded random streams.

Every sampler takes an explicit ``RngStream``; nothing draws from global
numpy state. Replication ``i`` of a study uses ``RngStream(seed).spawn(i)``,
which is the stream seeded with ``seed + i``.
"""

import numpy as np

from restricted_regression.core.errors import InvalidParameterError

MAX_SEED = 2**64 - 1


class RngStream:
    """Single-owner PCG64 generator with a recorded seed.

    Example:
        ```python
        rng = RngStream(7)
        z = rng.generator.standard_normal(3)
        child = rng.spawn(4)  # seeded with 11
        ```
    """

    __slots__ = ("generator", "seed")

    def __init__(self, seed: int) -> None:
        seed = int(seed)
        if not 0 <= seed <= MAX_SEED:
            raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.generator = np.random.Generator(np.random.PCG64(seed))

    def spawn(self, index: int) -> "RngStream":
        """Independent sub-stream for replication ``index``."""
        return RngStream(self.seed + int(index))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed})"
