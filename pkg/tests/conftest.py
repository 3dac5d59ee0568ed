import random
from pathlib import Path

import pytest

VECTORS_DIR = Path(__file__).resolve().parent.parent / "vectors"


@pytest.fixture
def rng():
    """Seeded RNG so failures reproduce; not used for real key material."""
    return random.Random(0xE5AFA)


def read_vector_file(name):
    """Parse a vectors/*.txt file into {name: bytes}."""
    values = {}
    for line in (VECTORS_DIR / name).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, hexval = line.split()
        values[key] = bytes.fromhex(hexval)
    return values
