# tests/conftest.py
import pytest

from formation_lab.utils.data_loader import FixtureLoader


@pytest.fixture(scope="session")
def loader():
    return FixtureLoader()


@pytest.fixture
def theta(loader):
    return loader.load_graph('theta')


@pytest.fixture
def k4(loader):
    return loader.load_graph('k4')
