import pytest

from qsigns.forms import delta_form, g_form, ramanujan_delta, x0_11_form


@pytest.fixture(scope="session")
def delta3k():
    return delta_form(3000)


@pytest.fixture(scope="session")
def g3k():
    return g_form(3000)


@pytest.fixture(scope="session")
def delta_wt12():
    return ramanujan_delta(300)


@pytest.fixture(scope="session")
def g11_wt2():
    return x0_11_form(20)
