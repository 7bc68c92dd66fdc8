"""Parameter sweeps producing tabular datasets.

Four generators: the cross section against photon energy, its per-orbit
decomposition, its dependence on the ion position (rho or beta), and its
dependence on the laser polarization direction.  Each returns a Dataset
carrying its full provenance, ready for CSV or JSON serialization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, VERSION, PhysicalConstants
from .errors import BelowThresholdError, BetaRangeError, GridError, ValidationError
from .geometry import BETA_MIN, IonPosition, WedgeGeometry, validate_beta
from .spectrum import (
    Polarization,
    ReflectionModel,
    _orbit_term,
    energy_conversion,
    orbit_catalog,
    sigma_background,
    sigma_total,
)

MetaPairs = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Dataset:
    """Rectangular table of reals with ordered provenance pairs."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    meta: MetaPairs

    def __post_init__(self):
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValidationError(
                    f"row width {len(row)} does not match {width} columns"
                )
            for value in row:
                if not math.isfinite(value):
                    raise ValidationError("dataset rows must be finite")

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows])


def _base_meta(
    generator: str,
    wedge: WedgeGeometry,
    consts: PhysicalConstants,
    **params,
) -> list[tuple[str, str]]:
    meta = [
        ("generator", generator),
        ("version", VERSION),
        ("opening_angle_rad", repr(wedge.opening_angle)),
        ("n_integer", repr(wedge.n_integer)),
    ]
    for key, value in params.items():
        meta.append((key, value if isinstance(value, str) else repr(value)))
    meta += [
        ("B", repr(consts.b_norm)),
        ("E_b_eV", repr(consts.binding_energy_ev)),
        ("c_au", repr(consts.c_light)),
        ("eV_per_hartree", repr(consts.ev_per_hartree)),
    ]
    return meta


def _validate_grid(start: float, stop: float, steps: int):
    if not (isinstance(steps, int) and steps >= 2):
        raise GridError(f"steps must be an integer >= 2, got {steps!r}")
    if not (math.isfinite(start) and math.isfinite(stop) and start < stop):
        raise GridError(f"need start < stop, got [{start!r}, {stop!r}]")


def energy_sweep(
    start_ev: float,
    stop_ev: float,
    steps: int,
    wedge: WedgeGeometry,
    ion: IonPosition,
    pol: Polarization,
    refl: ReflectionModel,
    orbit_source: str = "analytic",
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> Dataset:
    """Cross section on a uniform photon-energy grid (eV, endpoints included)."""
    _validate_grid(start_ev, stop_ev, steps)
    if start_ev <= consts.binding_energy_ev:
        raise BelowThresholdError(
            f"energy grid must start above the {consts.binding_energy_ev} eV "
            f"threshold, got {start_ev!r}"
        )
    rows = []
    for e_ph in np.linspace(start_ev, stop_ev, steps):
        point = sigma_total(
            float(e_ph), wedge, ion, pol, refl, orbit_source, consts
        )
        rows.append((point.e_photon_ev, point.sigma0, point.sigma_osc, point.sigma))
    meta = _base_meta(
        "energy_sweep", wedge, consts,
        rho_a0=ion.rho, beta_rad=ion.beta,
        theta_L_rad=pol.theta_L, phi_L_rad=pol.phi_L,
        delta_rad=refl.delta, orbit_source=orbit_source,
        E_min_eV=start_ev, E_max_eV=stop_ev, steps=steps,
    )
    return Dataset(
        columns=("E_photon_eV", "sigma0_au", "sigma_osc_au", "sigma_au"),
        rows=tuple(rows),
        meta=tuple(meta),
    )


def orbit_decomposition(
    start_ev: float,
    stop_ev: float,
    steps: int,
    wedge: WedgeGeometry,
    ion: IonPosition,
    pol: Polarization,
    refl: ReflectionModel,
    orbit_source: str = "analytic",
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> Dataset:
    """Per-orbit oscillatory terms on an energy grid; the total column is the
    running sum of the term columns in catalog order, so it reproduces
    sigma_total's sigma_osc bit for bit."""
    _validate_grid(start_ev, stop_ev, steps)
    if start_ev <= consts.binding_energy_ev:
        raise BelowThresholdError(
            f"energy grid must start above the {consts.binding_energy_ev} eV "
            f"threshold, got {start_ev!r}"
        )
    validate_beta(wedge, ion, BETA_MIN)
    catalog = orbit_catalog(wedge, ion, orbit_source)
    rows = []
    for e_ph in np.linspace(start_ev, stop_ev, steps):
        energy, k = energy_conversion(float(e_ph), consts)
        prefactor = 3.0 * sigma_background(energy, consts) / k
        terms = [_orbit_term(orbit, k, prefactor, pol, refl) for orbit in catalog]
        total = 0.0
        for term in terms:
            total += term
        rows.append((float(e_ph), total, *terms))
    meta = _base_meta(
        "orbit_decomposition", wedge, consts,
        rho_a0=ion.rho, beta_rad=ion.beta,
        theta_L_rad=pol.theta_L, phi_L_rad=pol.phi_L,
        delta_rad=refl.delta, orbit_source=orbit_source,
        E_min_eV=start_ev, E_max_eV=stop_ev, steps=steps,
    )
    columns = ("E_photon_eV", "sigma_osc_total_au") + tuple(
        f"term_{orbit.index}_au" for orbit in catalog
    )
    return Dataset(columns=columns, rows=tuple(rows), meta=tuple(meta))


POSITION_VARIABLES = ("rho", "beta")


def position_sweep(
    variable: str,
    start: float,
    stop: float,
    steps: int,
    e_photon_ev: float,
    wedge: WedgeGeometry,
    ion: IonPosition,
    pol: Polarization,
    refl: ReflectionModel,
    orbit_source: str = "analytic",
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> Dataset:
    """Cross section at fixed photon energy while the ion moves.

    ``variable`` picks the swept coordinate; the other one is taken from
    ``ion``.  Beta sweeps must stay inside the guard band
    [BETA_MIN, alpha - BETA_MIN].
    """
    _validate_grid(start, stop, steps)
    if variable not in POSITION_VARIABLES:
        raise ValidationError(
            f"variable must be one of {POSITION_VARIABLES}, got {variable!r}"
        )
    if variable == "rho":
        if start <= 0.0:
            raise ValidationError(f"rho grid must be positive, got {start!r}")
        column = "rho_a0"
    else:
        lo, hi = BETA_MIN, wedge.opening_angle - BETA_MIN
        if start < lo or stop > hi:
            raise BetaRangeError(
                f"beta grid [{start!r}, {stop!r}] leaves the guard band "
                f"[{lo!r}, {hi!r}]"
            )
        column = "beta_rad"
    rows = []
    for value in np.linspace(start, stop, steps):
        value = float(value)
        if variable == "rho":
            moved = IonPosition(value, ion.beta)
        else:
            moved = IonPosition(ion.rho, value)
        point = sigma_total(
            e_photon_ev, wedge, moved, pol, refl, orbit_source, consts
        )
        rows.append((value, point.sigma0, point.sigma_osc, point.sigma))
    meta = _base_meta(
        "position_sweep", wedge, consts,
        variable=variable,
        rho_a0=ion.rho, beta_rad=ion.beta,
        theta_L_rad=pol.theta_L, phi_L_rad=pol.phi_L,
        delta_rad=refl.delta, orbit_source=orbit_source,
        E_photon_eV=e_photon_ev, start=start, stop=stop, steps=steps,
    )
    return Dataset(
        columns=(column, "sigma0_au", "sigma_osc_au", "sigma_au"),
        rows=tuple(rows),
        meta=tuple(meta),
    )


def polarization_map(
    theta_steps: int,
    phi_steps: int,
    e_photon_ev: float,
    wedge: WedgeGeometry,
    ion: IonPosition,
    refl: ReflectionModel,
    orbit_source: str = "analytic",
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> Dataset:
    """sigma_osc over the polarization sphere: theta_L in [0, pi] inclusive,
    phi_L uniform on [0, 2 pi) without the duplicate endpoint."""
    if theta_steps < 2 or phi_steps < 2:
        raise GridError("theta_steps and phi_steps must each be >= 2")
    rows = []
    for theta in np.linspace(0.0, math.pi, theta_steps):
        for phi in np.linspace(0.0, 2.0 * math.pi, phi_steps, endpoint=False):
            pol = Polarization(float(theta), float(phi))
            point = sigma_total(
                e_photon_ev, wedge, ion, pol, refl, orbit_source, consts
            )
            rows.append((float(theta), float(phi), point.sigma_osc))
    meta = _base_meta(
        "polarization_map", wedge, consts,
        rho_a0=ion.rho, beta_rad=ion.beta,
        delta_rad=refl.delta, orbit_source=orbit_source,
        E_photon_eV=e_photon_ev,
        theta_steps=theta_steps, phi_steps=phi_steps,
    )
    return Dataset(
        columns=("theta_L_rad", "phi_L_rad", "sigma_osc_au"),
        rows=tuple(rows),
        meta=tuple(meta),
    )
