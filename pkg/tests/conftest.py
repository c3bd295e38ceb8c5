import pytest

from butterfly_bct.field import FieldSpec


@pytest.fixture(scope="session")
def F3():
    return FieldSpec(3)


@pytest.fixture(scope="session")
def F5():
    return FieldSpec(5)


@pytest.fixture(scope="session")
def F7():
    return FieldSpec(7)
