import pytest
from hypothesis import settings

from qcldpc.designer import h1, h2

# wall-clock deadlines are noise on loaded machines; example counts stay put
settings.register_profile("no-deadline", deadline=None)
settings.load_profile("no-deadline")


@pytest.fixture(scope="session")
def m_h1():
    return h1()


@pytest.fixture(scope="session")
def m_h2():
    return h2()
