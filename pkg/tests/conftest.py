import numpy as np
import pytest

from uavrf.channel import RadioConfig, environment_preset
from uavrf.placement import EnergyParams


@pytest.fixture(scope="session")
def urban():
    return environment_preset("urban")


@pytest.fixture(scope="session")
def dense_urban():
    return environment_preset("dense-urban")


@pytest.fixture(scope="session")
def suburban():
    return environment_preset("suburban")


@pytest.fixture(scope="session")
def radio():
    # common numerical parameters: 2.4 GHz, 10 kHz/user, N0 = 5e-15 W/Hz,
    # 10 kbps/user, 1e4 m^2 reference cell
    return RadioConfig()


@pytest.fixture(scope="session")
def energy_unit_area():
    # battery chosen so that a 1e6 m^2 subregion gives S/(pi*E_b) = 1
    return EnergyParams(p_circuit=0.5, battery_j=1e6 / np.pi)
