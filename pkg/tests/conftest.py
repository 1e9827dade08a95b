import numpy as np
import pytest

from freqassign import (
    SPEED_OF_LIGHT,
    CarrierFrequency,
    DistanceInterval,
    FrequencyPair,
    SceneGeometry,
)

# Running example: h_tx = 10 m, h_rx = 1.5 m, omega/c = 10 rad/m
# (f approx 477 MHz) compared against f = 2.4 GHz, interval [30, 100] m.
EX_GEOM = SceneGeometry(10.0, 1.5)
EX_FREQ_LOW = CarrierFrequency(10.0 * SPEED_OF_LIGHT / (2.0 * np.pi))
EX_FREQ_HIGH = CarrierFrequency(2.4e9)
EX_INTERVAL = DistanceInterval(30.0, 100.0)
EX_PAIR = FrequencyPair.from_spacing(2.4e9, 250e6)


@pytest.fixture
def ex_geom():
    return EX_GEOM


@pytest.fixture
def ex_interval():
    return EX_INTERVAL
