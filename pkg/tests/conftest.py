import random
from pathlib import Path

import pytest

from mnd.corpus import gen_scenario

REPO = Path(__file__).resolve().parent.parent
SCENARIOS = REPO / "scenarios"

CORPUS_SEED = 20260810
CORPUS_SIZE = 500


@pytest.fixture(scope="session")
def scenarios_dir() -> Path:
    return SCENARIOS


@pytest.fixture(scope="session")
def corpus500():
    """The shared randomized corpus used by the consistency, adequacy and
    termination acceptance criteria."""
    rng = random.Random(CORPUS_SEED)
    return [gen_scenario(rng) for _ in range(CORPUS_SIZE)]
