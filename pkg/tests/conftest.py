import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from morphic.abgroup import enumerate_groups  # noqa: E402


@pytest.fixture(scope="session")
def groups_16():
    return list(enumerate_groups(16))


@pytest.fixture(scope="session")
def groups_64():
    return list(enumerate_groups(64))
