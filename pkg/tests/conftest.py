from pathlib import Path

import pytest
from hypothesis import settings

from sftc.fixtures import MATRICES, graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(params=sorted(MATRICES))
def fixture_graph(request):
    return graph(request.param)
