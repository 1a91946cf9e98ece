import pytest

from chevtori.rootsystem import root_system
from chevtori.tables import load_tables
from chevtori.tits import tits_group


@pytest.fixture(scope="session")
def e6():
    return root_system("E6")


@pytest.fixture(scope="session")
def e7():
    return root_system("E7")


@pytest.fixture(scope="session")
def e8():
    return root_system("E8")


@pytest.fixture(scope="session")
def g6():
    return tits_group("E6")


@pytest.fixture(scope="session")
def g7():
    return tits_group("E7")


@pytest.fixture(scope="session")
def g8():
    return tits_group("E8")


@pytest.fixture(scope="session")
def tables7():
    return load_tables("E7")


@pytest.fixture(scope="session")
def tables8():
    return load_tables("E8")


@pytest.fixture(scope="session")
def tables6():
    return load_tables("E6")
