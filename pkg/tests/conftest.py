from pathlib import Path

import pytest

from gradia.calculi.ddc.pts import coc, type_in_type
from gradia.calculi.ddc.schemas import DdcConfig
from gradia.lattice import irrelevance, low_medium_high, two_point

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def li():
    return irrelevance()


@pytest.fixture
def lmh():
    return low_medium_high()


@pytest.fixture
def two():
    return two_point()


@pytest.fixture
def ddc_config(li):
    return DdcConfig(lattice=li, pts=type_in_type(), fuel=200)


@pytest.fixture
def coc_config(li):
    return DdcConfig(lattice=li, pts=coc(), fuel=200)


@pytest.fixture
def report_dir(tmp_path):
    path = tmp_path / "reports"
    path.mkdir()
    return path
