"""Closed-orbit photodetachment cross sections for a negative ion inside a
wedge-shaped reflecting cavity.

The light modules (geometry, orbits, constants, errors) import eagerly and
pull in nothing beyond the standard library, so catalog work stays fast.
The numerics-heavy modules (spectrum, oracle, sweeps, cli) load lazily on
first attribute access.
"""

from __future__ import annotations

import importlib

from . import constants, errors, geometry, orbits
from .constants import DEFAULT_CONSTANTS, VERSION, PhysicalConstants
from .errors import NumericError, ValidationError, WedgeCotError
from .geometry import IonPosition, WedgeGeometry

__version__ = VERSION

_LAZY_MODULES = frozenset({"spectrum", "oracle", "sweeps", "cli"})

__all__ = [
    "DEFAULT_CONSTANTS",
    "IonPosition",
    "NumericError",
    "PhysicalConstants",
    "ValidationError",
    "WedgeCotError",
    "WedgeGeometry",
    "cli",
    "constants",
    "errors",
    "geometry",
    "oracle",
    "orbits",
    "spectrum",
    "sweeps",
]


def __getattr__(name: str):
    if name in _LAZY_MODULES:
        module = importlib.import_module(f".{name}", __name__)
        globals()[name] = module
        return module
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    return sorted(set(globals()) | _LAZY_MODULES)
