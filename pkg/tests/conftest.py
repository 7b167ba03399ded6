import pytest

from galcert import heckedata


@pytest.fixture(scope="session")
def tables():
    return {name: heckedata.load_bundled(name) for name in heckedata.BUNDLED_TABLES}


@pytest.fixture(scope="session")
def f27(tables):
    return tables["f27_level1"]


@pytest.fixture(scope="session")
def f5(tables):
    return tables["f5_levelp5_f"]


@pytest.fixture(scope="session")
def f10(tables):
    return tables["f10_levelp5_g"]


@pytest.fixture(scope="session")
def g_small(tables):
    return tables["f5_levelp5_g_small"]
