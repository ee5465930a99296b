"""Reproducible random instances for stress tests and the ``--seed`` CLI option."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .core import HarmonicTrinomial


def random_trinomial(
    rng: np.random.Generator,
    *,
    max_n: int = 6,
    mod_range: tuple[float, float] = (0.1, 10.0),
    coprime: bool = True,
) -> HarmonicTrinomial:
    """Moduli log-uniform on ``mod_range``, phases uniform, ``n <= max_n``."""
    while True:
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(1, n))
        if not coprime or math.gcd(n, m) == 1:
            break
    lo, hi = np.log(mod_range[0]), np.log(mod_range[1])
    mods = np.exp(rng.uniform(lo, hi, size=3))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=3)
    a, b, c = (complex(r * np.exp(1j * t)) for r, t in zip(mods, phases))
    return HarmonicTrinomial(a, b, c, n, m)


def corpus(seed: int, size: int, **kwargs) -> Iterator[HarmonicTrinomial]:
    rng = np.random.default_rng(seed)
    for _ in range(size):
        yield random_trinomial(rng, **kwargs)


def instance_from_seed(seed: int, **kwargs) -> HarmonicTrinomial:
    return random_trinomial(np.random.default_rng(seed), **kwargs)
