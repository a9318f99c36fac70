import pytest

from cosetkit import data_path

DATA = data_path()


@pytest.fixture
def data_dir():
    return DATA
