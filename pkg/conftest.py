import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from wronski.utils.misc import get_rng


@pytest.fixture
def rng():
    return get_rng(20240611)
