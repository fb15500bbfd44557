import pytest

from quatforms.classes import LevelSpec, class_set
from quatforms.config import reset_config
from quatforms.hecke import FormSpace
from quatforms.padic import PrecCtx


@pytest.fixture(autouse=True)
def _fresh_config():
    reset_config()
    yield
    reset_config()


@pytest.fixture(scope="session")
def cs_7():
    """U1(7), no level structure at 2: two classes."""
    return class_set(LevelSpec(p=7), PrecCtx(7, 10))


@pytest.fixture(scope="session")
def cs_11_e1():
    """U1(11) x (1 + m): fifteen classes."""
    return class_set(LevelSpec(p=11, e=1), PrecCtx(11, 8))


@pytest.fixture(scope="session")
def weight2_7(cs_7):
    return FormSpace(cs_7, 2)


@pytest.fixture(scope="session")
def weight5_7(cs_7):
    return FormSpace(cs_7, 5)


@pytest.fixture(scope="session")
def weight3_11(cs_11_e1):
    return FormSpace(cs_11_e1, 3)


@pytest.fixture(scope="session")
def weight2_5():
    """Weight 2 at U1(5): one class, U5 acts by 5."""
    return FormSpace(class_set(LevelSpec(p=5), PrecCtx(5, 10)), 2)
