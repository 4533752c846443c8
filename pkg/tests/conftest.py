import pytest

from carmlab.core_arith import SpfTable


@pytest.fixture(scope="session")
def spf100k() -> SpfTable:
    return SpfTable.build(10**5)
