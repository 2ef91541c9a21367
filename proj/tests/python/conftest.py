import pathlib

import pytest


@pytest.fixture
def sample_dir():
    return pathlib.Path(__file__).resolve().parents[2] / "data" / "sample"
