import pytest

from drivenqc import integral_table


@pytest.fixture(scope="session")
def table():
    return integral_table()
