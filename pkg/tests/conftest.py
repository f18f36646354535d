import random

import pytest


@pytest.fixture
def rng() -> random.Random:
    """Deterministic per-test randomness."""
    return random.Random(20260814)
