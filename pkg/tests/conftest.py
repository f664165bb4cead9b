import pytest

from ckforms.embeddings import product_algebra
from ckforms.realforms import build_real_form


@pytest.fixture(scope="session")
def so23():
    return build_real_form("so(2,3)")


@pytest.fixture(scope="session")
def so24():
    return build_real_form("so(2,4)")


@pytest.fixture(scope="session")
def so34():
    return build_real_form("so(3,4)")


@pytest.fixture(scope="session")
def so44():
    return build_real_form("so(4,4)")


@pytest.fixture(scope="session")
def su22():
    return build_real_form("su(2,2)")


@pytest.fixture(scope="session")
def so44xso24():
    return product_algebra("so(4,4)", "so(2,4)")
