import pytest

from reconlab.core import build
from reconlab.corpus import corpus_get


@pytest.fixture(scope="session")
def dp3():
    return build(3, [(0, 1), (1, 2)])


@pytest.fixture(scope="session")
def p3u():
    return build(3, [(0, 1), (1, 2)], symmetric=True)


@pytest.fixture(scope="session")
def k3():
    return build(3, [(0, 1), (1, 2), (0, 2)], symmetric=True)


@pytest.fixture(scope="session")
def k13():
    return build(4, [(0, 1), (0, 2), (0, 3)], symmetric=True)


@pytest.fixture(scope="session")
def c8():
    return corpus_get("c8").digraphs[0]
