"""Shared fixtures: the reference wedge configuration used across tests."""

import math

import pytest

from wedge_cot.geometry import IonPosition, WedgeGeometry
from wedge_cot.spectrum import ReflectionModel


@pytest.fixture(scope="session")
def wedge5():
    return WedgeGeometry.from_n(5)


@pytest.fixture(scope="session")
def ion_ref():
    # rho = 200 bohr, beta = pi/15: the configuration of the reference orbit
    # catalog and of every figure-style dataset.
    return IonPosition(200.0, math.pi / 15)


@pytest.fixture(scope="session")
def hard():
    return ReflectionModel.hard()
