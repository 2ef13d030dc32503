from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass


@dataclass(frozen=True)
class GenericityProtocol:
    """How "a general point" is realized: seeded integer sampling.

    Every random draw comes from a generator forked off ``seed`` and a tuple
    of keys (configuration fingerprint, purpose, trial index, ...), so results
    never depend on evaluation order.
    """

    seed: int = 42
    trials: int = 3
    height: int = 1000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.height < 1:
            raise ValueError("height must be at least 1")

    def rng(self, *keys) -> random.Random:
        return random.Random("|".join([str(self.seed), *map(str, keys)]))


def fingerprint(cfg) -> str:
    """Short stable digest of a configuration's canonical coordinates."""
    text = ";".join(",".join(map(str, p.coords)) for p in cfg.points)
    return hashlib.sha256(text.encode()).hexdigest()[:16]
