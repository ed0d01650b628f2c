"""Seeded random instances shared by the verification suites and tests."""

from __future__ import annotations

import random

from .relations import BiRelation
from .setsystem import SetSystem


def random_system(rng: random.Random, n_max: int = 12, m_max: int = 40) -> SetSystem:
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    masks = [rng.randrange(1 << n) for _ in range(m)]
    return SetSystem.from_masks(n, masks)


def random_relation(rng: random.Random, x_max: int = 8, y_max: int = 8,
                    density: float = 0.5) -> BiRelation:
    x = rng.randint(1, x_max)
    y = rng.randint(1, y_max)
    rows = []
    for _ in range(x):
        row = 0
        for b in range(y):
            if rng.random() < density:
                row |= 1 << b
        rows.append(row)
    return BiRelation.from_rows(x, y, rows)
