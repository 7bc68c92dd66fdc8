"""Photodetachment cross sections inside the wedge.

The total cross section splits into a smooth background, the cross section
of the free ion, plus one oscillatory term per closed orbit:

    sigma = sigma0 + sum_j (3 sigma0 / k) f_out f_ret sin(k L_j - m_j Delta) / L_j

where f_* projects the laser polarization onto the outgoing and returning
momentum directions and Delta is the phase lost per wall reflection (pi for
hard walls).  For x, y, and z polarization with hard walls the sum collapses
to closed forms evaluated here independently of the orbit catalog.

Energies are in hartree internally; photon energies enter in eV.  Cross
sections are in bohr^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .errors import (
    BelowThresholdError,
    ClosedFormDeltaError,
    ValidationError,
)
from .geometry import BETA_MIN, TWO_PI, IonPosition, WedgeGeometry, validate_beta
from .orbits import (
    ClosedOrbit,
    OrbitSearchConfig,
    default_search_config,
    enumerate_analytic,
    find_numeric,
)

ORBIT_SOURCES = ("analytic", "numeric")


@dataclass(frozen=True)
class Polarization:
    """Linear laser polarization by its spherical angles (theta_L, phi_L)."""

    theta_L: float
    phi_L: float

    def __post_init__(self):
        if not (0.0 <= self.theta_L <= math.pi):
            raise ValidationError(
                f"theta_L must lie in [0, pi], got {self.theta_L!r}"
            )
        if not math.isfinite(self.phi_L):
            raise ValidationError("phi_L must be finite")
        object.__setattr__(self, "phi_L", self.phi_L % TWO_PI)

    @classmethod
    def x(cls) -> "Polarization":
        return cls(0.5 * math.pi, 0.0)

    @classmethod
    def y(cls) -> "Polarization":
        return cls(0.5 * math.pi, 0.5 * math.pi)

    @classmethod
    def z(cls) -> "Polarization":
        return cls(0.0, 0.0)

    def unit_vector(self) -> tuple[float, float, float]:
        st = math.sin(self.theta_L)
        return (
            st * math.cos(self.phi_L),
            st * math.sin(self.phi_L),
            math.cos(self.theta_L),
        )


@dataclass(frozen=True)
class ReflectionModel:
    """Phase loss per wall reflection: pi for hard walls, pi/2 for soft."""

    delta: float

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise ValidationError("delta must be finite")

    @classmethod
    def hard(cls) -> "ReflectionModel":
        return cls(math.pi)

    @classmethod
    def soft(cls) -> "ReflectionModel":
        return cls(0.5 * math.pi)

    @property
    def is_hard(self) -> bool:
        return self.delta == math.pi


@dataclass(frozen=True)
class SpectrumPoint:
    """Cross section at one photon energy, split into its parts."""

    e_photon_ev: float
    energy: float
    k: float
    sigma0: float
    sigma_osc: float
    sigma: float

    def __post_init__(self):
        if self.sigma != self.sigma0 + self.sigma_osc:
            raise ValidationError("sigma must equal sigma0 + sigma_osc exactly")

    @classmethod
    def build(
        cls, e_photon_ev: float, energy: float, k: float,
        sigma0: float, sigma_osc: float,
    ) -> "SpectrumPoint":
        return cls(e_photon_ev, energy, k, sigma0, sigma_osc, sigma0 + sigma_osc)


def energy_conversion(
    e_photon_ev: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> tuple[float, float]:
    """Photon energy in eV -> (detached-electron energy in hartree, k)."""
    if not (e_photon_ev > consts.binding_energy_ev):
        raise BelowThresholdError(
            f"photon energy {e_photon_ev!r} eV does not exceed the "
            f"{consts.binding_energy_ev} eV binding energy"
        )
    energy = (e_photon_ev - consts.binding_energy_ev) / consts.ev_per_hartree
    return energy, math.sqrt(2.0 * energy)


def sigma_background(
    energy: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> float:
    """Smooth cross section of the free ion: rises from threshold as E^(3/2),
    peaks at E equal to the binding energy, then falls off as E^(-3/2)."""
    if not (energy > 0.0):
        raise BelowThresholdError(
            f"detached-electron energy must be positive, got {energy!r}"
        )
    b2 = consts.b_norm * consts.b_norm
    e_b = consts.binding_energy
    return (
        16.0 * math.sqrt(2.0) * b2 * math.pi**2 * energy**1.5
        / (3.0 * consts.c_light * (e_b + energy) ** 3)
    )


def angular_factor(theta: float, phi: float, pol: Polarization) -> float:
    """Projection of the polarization onto the unit vector at (theta, phi)."""
    return math.cos(theta) * math.cos(pol.theta_L) + math.sin(theta) * math.sin(
        pol.theta_L
    ) * math.cos(phi - pol.phi_L)


def _in_plane_factor(phi: float, pol: Polarization) -> float:
    # angular_factor at theta = pi/2 with cos(pi/2) taken as exactly zero,
    # so z polarization yields an identically zero orbit sum.
    return math.sin(pol.theta_L) * math.cos(phi - pol.phi_L)


# Double-double splitting of 2*pi, for reducing large phase arguments.
_TWO_PI_HI = 6.283185307179586
_TWO_PI_LO = 2.4492935982947064e-16
_SPLITTER = 134217729.0  # 2**27 + 1, Dekker's constant
_REDUCE_THRESHOLD = float(2**32)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    """a*b as an exact double-double (product, rounding error)."""
    p = a * b
    a_big = a * _SPLITTER
    a_hi = a_big - (a_big - a)
    a_lo = a - a_hi
    b_big = b * _SPLITTER
    b_hi = b_big - (b_big - b)
    b_lo = b - b_hi
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


def phase_sin(k: float, length: float, shift: float) -> float:
    """sin(k*length - shift), keeping the phase accurate when k*length is
    too large for a naive product to retain sub-radian precision."""
    product = k * length
    if product < _REDUCE_THRESHOLD:
        return math.sin(product - shift)
    hi, lo = _two_prod(k, length)
    n = round(hi / _TWO_PI_HI)
    q_hi, q_lo = _two_prod(float(n), _TWO_PI_HI)
    reduced = ((hi - q_hi) - q_lo) + (lo - n * _TWO_PI_LO)
    return math.sin(reduced - shift)


def orbit_term(
    orbit: ClosedOrbit,
    k: float,
    pol: Polarization,
    refl: ReflectionModel,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Oscillatory contribution of a single closed orbit at momentum k."""
    if not (k > 0.0):
        raise ValidationError(f"k must be positive, got {k!r}")
    sigma0 = sigma_background(0.5 * k * k, consts)
    return _orbit_term(orbit, k, 3.0 * sigma0 / k, pol, refl)


def _orbit_term(
    orbit: ClosedOrbit,
    k: float,
    prefactor: float,
    pol: Polarization,
    refl: ReflectionModel,
) -> float:
    f_out = _in_plane_factor(orbit.phi_out, pol)
    f_ret = _in_plane_factor(orbit.phi_ret, pol)
    phase = phase_sin(k, orbit.length, orbit.m * refl.delta)
    return prefactor * f_out * f_ret * phase / orbit.length


@lru_cache(maxsize=64)
def _orbit_catalog(
    wedge: WedgeGeometry,
    ion: IonPosition,
    source: str,
    max_reflections: int | None,
) -> tuple[ClosedOrbit, ...]:
    if source == "analytic":
        if wedge.n_integer is None:
            raise ValidationError(
                "the analytic orbit catalog requires an opening angle pi/N; "
                "use orbit_source='numeric' for this wedge"
            )
        return tuple(enumerate_analytic(wedge.n_integer, ion))
    if source == "numeric":
        if max_reflections is None:
            cfg = default_search_config(wedge)
        else:
            cfg = OrbitSearchConfig(max_reflections=max_reflections)
        return tuple(find_numeric(wedge, ion, cfg))
    raise ValidationError(
        f"orbit_source must be one of {ORBIT_SOURCES}, got {source!r}"
    )


def orbit_catalog(
    wedge: WedgeGeometry,
    ion: IonPosition,
    source: str = "analytic",
    max_reflections: int | None = None,
) -> tuple[ClosedOrbit, ...]:
    """Catalog for the given wedge and ion, cached across energy grids."""
    return _orbit_catalog(wedge, ion, source, max_reflections)


def sigma_total(
    e_photon_ev: float,
    wedge: WedgeGeometry,
    ion: IonPosition,
    pol: Polarization,
    refl: ReflectionModel,
    orbit_source: str = "analytic",
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    beta_min: float = BETA_MIN,
) -> SpectrumPoint:
    """Total cross section: background plus the sum over closed orbits."""
    validate_beta(wedge, ion, beta_min)
    energy, k = energy_conversion(e_photon_ev, consts)
    sigma0 = sigma_background(energy, consts)
    prefactor = 3.0 * sigma0 / k
    sigma_osc = 0.0
    for orbit in orbit_catalog(wedge, ion, orbit_source):
        sigma_osc += _orbit_term(orbit, k, prefactor, pol, refl)
    return SpectrumPoint.build(e_photon_ev, energy, k, sigma0, sigma_osc)


def _closed_form_guard(refl: ReflectionModel | None, n: int, ion: IonPosition):
    if refl is not None and not refl.is_hard:
        raise ClosedFormDeltaError(
            "the closed-form cross sections assume hard walls "
            f"(delta = pi); got delta = {refl.delta!r}"
        )
    validate_beta(WedgeGeometry.from_n(n), ion, BETA_MIN)


def sigma_x_closed_form(
    e_photon_ev: float,
    n: int,
    ion: IonPosition,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    refl: ReflectionModel | None = None,
) -> SpectrumPoint:
    """Hard-wall cross section for x polarization in a pi/N wedge, written
    without reference to the orbit catalog."""
    _closed_form_guard(refl, n, ion)
    energy, k = energy_conversion(e_photon_ev, consts)
    sigma0 = sigma_background(energy, consts)
    rho, beta = ion.rho, ion.beta
    two_k_rho = 2.0 * k * rho

    chord = math.sin(beta)
    osc = 3.0 * sigma0 * phase_sin(two_k_rho, chord, 0.0) / (two_k_rho * chord)
    for i in range(1, n):
        angle = i * math.pi / n
        chord = math.sin(angle - beta)
        osc += (
            3.0 * sigma0 * math.cos(angle) ** 2
            * phase_sin(two_k_rho, chord, 0.0) / (two_k_rho * chord)
        )
        # sin(i pi/n) evaluated on the folded argument, as in the catalog.
        chord = math.sin(min(i, n - i) * math.pi / n)
        osc += (
            3.0 * sigma0 * math.cos(angle + beta) * math.cos(angle - beta)
            * phase_sin(two_k_rho, chord, 0.0) / (two_k_rho * chord)
        )
    return SpectrumPoint.build(e_photon_ev, energy, k, sigma0, osc)


def sigma_y_closed_form(
    e_photon_ev: float,
    n: int,
    ion: IonPosition,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    refl: ReflectionModel | None = None,
) -> SpectrumPoint:
    """Hard-wall cross section for y polarization in a pi/N wedge."""
    _closed_form_guard(refl, n, ion)
    energy, k = energy_conversion(e_photon_ev, consts)
    sigma0 = sigma_background(energy, consts)
    rho, beta = ion.rho, ion.beta
    two_k_rho = 2.0 * k * rho

    osc = 0.0
    for i in range(1, n):
        angle = i * math.pi / n
        chord = math.sin(angle - beta)
        osc += (
            3.0 * sigma0 * math.sin(angle) ** 2
            * phase_sin(two_k_rho, chord, 0.0) / (two_k_rho * chord)
        )
        # sin(i pi/n) evaluated on the folded argument, as in the catalog.
        chord = math.sin(min(i, n - i) * math.pi / n)
        osc -= (
            3.0 * sigma0 * math.sin(angle + beta) * math.sin(angle - beta)
            * phase_sin(two_k_rho, chord, 0.0) / (two_k_rho * chord)
        )
    return SpectrumPoint.build(e_photon_ev, energy, k, sigma0, osc)


def sigma_z_closed_form(
    e_photon_ev: float,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> SpectrumPoint:
    """z polarization: every orbit is perpendicular to the polarization, so
    the wedge leaves no imprint and the free-ion background survives alone."""
    energy, k = energy_conversion(e_photon_ev, consts)
    sigma0 = sigma_background(energy, consts)
    return SpectrumPoint.build(e_photon_ev, energy, k, sigma0, 0.0)
