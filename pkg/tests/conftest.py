import numpy as np
import pytest

from kgo import OscillatorParams, gauss_hermite, gauss_laguerre


@pytest.fixture(scope="session")
def unit_params():
    return OscillatorParams(1.0, 1.0)


@pytest.fixture(scope="session")
def gh32():
    return gauss_hermite(32)


@pytest.fixture(scope="session")
def gh64():
    return gauss_hermite(64)


@pytest.fixture(scope="session")
def gh128():
    return gauss_hermite(128)


@pytest.fixture(scope="session")
def gh160():
    return gauss_hermite(160)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def laguerre_rule_cache():
    cache = {}

    def get(count, alpha):
        key = (count, alpha)
        if key not in cache:
            cache[key] = gauss_laguerre(count, alpha)
        return cache[key]

    return get
