from pathlib import Path

import pytest

from nl2vis import NL2Vis

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

RUNNING_QUERY = ("Show the relationship between budget and rating for Action "
                 "and Adventure movies that grossed over 100M")


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def movies() -> NL2Vis:
    return NL2Vis(DATA_DIR / "movies.csv")


@pytest.fixture(scope="session")
def cars() -> NL2Vis:
    return NL2Vis(DATA_DIR / "cars.csv")


@pytest.fixture(scope="session")
def housing() -> NL2Vis:
    return NL2Vis(DATA_DIR / "housing.csv")


@pytest.fixture(scope="session")
def olympics() -> NL2Vis:
    return NL2Vis(DATA_DIR / "olympics.csv")
