import pathlib

import pytest

from cohortlens import Dataset, ingest_canonical

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def _load(tmp_path_factory, name):
    target = tmp_path_factory.mktemp(name)
    ingest_canonical(FIXTURES / name / "data.csv", target, name=name)
    return Dataset(target)


@pytest.fixture(scope="session")
def two_universities(tmp_path_factory):
    return _load(tmp_path_factory, "two_universities")


@pytest.fixture(scope="session")
def national_2021(tmp_path_factory):
    return _load(tmp_path_factory, "national_2021")


@pytest.fixture(scope="session")
def hsi_2021(tmp_path_factory):
    return _load(tmp_path_factory, "hsi_2021")


@pytest.fixture(scope="session")
def evenness_decade(tmp_path_factory):
    return _load(tmp_path_factory, "evenness_decade")


@pytest.fixture(scope="session")
def js_five(tmp_path_factory):
    return _load(tmp_path_factory, "js_five")
