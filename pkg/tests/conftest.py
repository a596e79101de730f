import random
from fractions import Fraction

import pytest

from banach_gauge import FinVec

ENTRY_POOL = [
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
]


def random_finvec(rng: random.Random, max_index: int = 9, allow_empty: bool = False) -> FinVec:
    """Random vector with support inside [1, max_index] and entries from the
    small exact pool (plus zeros)."""
    entries = {}
    for j in range(1, max_index + 1):
        v = rng.choice(ENTRY_POOL + [Fraction(0)])
        if v:
            entries[j] = v
    if not entries and not allow_empty:
        entries[rng.randint(1, max_index)] = rng.choice(ENTRY_POOL)
    return FinVec(entries)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260808)
