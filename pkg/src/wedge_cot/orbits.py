"""Catalogs of closed orbits: trajectories leaving the ion and returning to it.

For a wedge of opening angle pi/N the catalog is analytic: there are exactly
2N-1 closed orbits, indexed j = 1..2N-1 in ascending launch azimuth.  Odd-j
orbits leave at phi_out = (j+1)pi/(2N), retrace themselves, and return
antiparallel; even-j orbits leave at phi_out = j pi/(2N) + beta and pair up
with their time-reversed partners j <-> 2N-j.  Every orbit has length
L = 2 rho |sin(phi_out - beta)| and bounces m = min(j, 2N-j) times.

For arbitrary opening angles the catalog is found by shooting: scan launch
azimuths across the interior fan, record the signed miss distance at each
closest approach to the ion, and bisect the sign changes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ApexSingularityError,
    BetaRangeError,
    ValidationError,
    ZeroLengthOrbitError,
)
from .geometry import (
    TWO_PI,
    Approach,
    IonPosition,
    WedgeGeometry,
    ion_cartesian,
    trace,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosedOrbit:
    """One closed orbit on the cross-sectional plane.

    Both polar angles are implicitly pi/2 (the orbits are planar); phi_out is
    the launch azimuth, phi_ret the azimuth of the returning momentum, m the
    number of surface bounces, and length the path length in bohr.
    """

    index: int
    phi_out: float
    phi_ret: float
    m: int
    length: float

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"reflection count must be >= 1, got {self.m!r}")
        if not (math.isfinite(self.length) and self.length > 0.0):
            raise ZeroLengthOrbitError(
                f"orbit length must be positive, got {self.length!r}"
            )
        for name in ("phi_out", "phi_ret"):
            value = getattr(self, name)
            if not (0.0 <= value < TWO_PI):
                raise ValidationError(f"{name} must lie in [0, 2*pi), got {value!r}")


@dataclass(frozen=True)
class ExactOrbit:
    """Closed orbit of a pi/N wedge with angles kept as exact rationals.

    Angles are stored as multiples of pi (phi = fraction * pi), which is the
    form the analytic catalog takes when beta itself is a rational multiple
    of pi.  ``chord_over_pi`` is the q in L = 2 rho |sin(q pi)|.
    """

    index: int
    phi_out_over_pi: Fraction
    phi_ret_over_pi: Fraction
    m: int
    chord_over_pi: Fraction

    def to_closed_orbit(self, rho: float) -> ClosedOrbit:
        return ClosedOrbit(
            index=self.index,
            phi_out=float(self.phi_out_over_pi) * math.pi,
            phi_ret=float(self.phi_ret_over_pi) * math.pi,
            m=self.m,
            length=2.0 * rho * abs(math.sin(_folded_sine_arg(self.chord_over_pi))),
        )


def _folded_sine_arg(chord_over_pi: Fraction) -> float:
    # |sin(q pi)| = |sin((1 - q) pi)| exactly; folding q into [0, 1/2] before
    # rounding makes time-reversed partner orbits equal in length bit for bit.
    q = Fraction(chord_over_pi) % 1
    return float(min(q, 1 - q)) * math.pi


def _validate_n(n: int):
    if not (isinstance(n, int) and n >= 1):
        raise ValidationError(f"N must be a positive integer, got {n!r}")


def exact_catalog(n: int, beta_over_pi: Fraction) -> list[ExactOrbit]:
    """Analytic catalog for a pi/N wedge with beta an exact fraction of pi.

    All angle arithmetic is exact, so the result can be compared against a
    reference table of rational multiples of pi without rounding.
    """
    _validate_n(n)
    beta_over_pi = Fraction(beta_over_pi)
    if not (0 < beta_over_pi < Fraction(1, n)):
        raise BetaRangeError(
            f"beta must lie in (0, pi/{n}), got {beta_over_pi} * pi"
        )
    orbits = []
    for j in range(1, 2 * n):
        m = j if j <= n else 2 * n - j
        if j % 2:
            out = Fraction(j + 1, 2 * n)
            ret = (out + 1) % 2
            chord = out - beta_over_pi
        else:
            out = Fraction(j, 2 * n) + beta_over_pi
            ret = Fraction(2 * n - j, 2 * n) + beta_over_pi + 1
            chord = Fraction(j, 2 * n)
        orbits.append(ExactOrbit(j, out, ret % 2, m, chord))
    return orbits


def enumerate_analytic(n: int, ion: IonPosition) -> list[ClosedOrbit]:
    """Analytic catalog for a pi/N wedge: 2N-1 orbits in ascending phi_out."""
    _validate_n(n)
    alpha = math.pi / n
    if not (0.0 < ion.beta < alpha):
        raise BetaRangeError(
            f"beta={ion.beta!r} outside (0, {alpha!r}) for a pi/{n} wedge"
        )
    orbits = []
    for j in range(1, 2 * n):
        m = j if j <= n else 2 * n - j
        if j % 2:
            out_over_pi = Fraction(j + 1, 2 * n)
            phi_out = float(out_over_pi) * math.pi
            phi_ret = float((out_over_pi + 1) % 2) * math.pi
            # sin argument lies in (0, pi): the |.| is a formality.
            chord = 2.0 * ion.rho * abs(math.sin(phi_out - ion.beta))
        else:
            base = Fraction(j, 2 * n)
            phi_out = float(base) * math.pi + ion.beta
            # Returning momentum of the time-reversed partner, plus pi;
            # stays below 2*pi because beta < pi/N.
            phi_ret = float(Fraction(2 * n - j, 2 * n) + 1) * math.pi + ion.beta
            # beta cancels in phi_out - beta; use the exact folded form.
            chord = 2.0 * ion.rho * abs(math.sin(_folded_sine_arg(base)))
        orbits.append(ClosedOrbit(j, phi_out, phi_ret % TWO_PI, m, chord))
    return orbits


@dataclass(frozen=True)
class OrbitSearchConfig:
    """Tuning knobs for the shooting search.

    ``scan_samples`` = 0 means 720 per allowed reflection; ``return_radius``
    = 0 means 1e-6 * rho, resolved when the search runs.
    """

    max_reflections: int
    scan_samples: int = 0
    return_radius: float = 0.0
    angle_tolerance: float = 1e-11
    dedupe_tolerance: float = 1e-8

    def __post_init__(self):
        if not (isinstance(self.max_reflections, int) and self.max_reflections >= 1):
            raise ValidationError("max_reflections must be a positive integer")
        if self.scan_samples == 0:
            object.__setattr__(self, "scan_samples", 720 * self.max_reflections)
        if self.scan_samples < 4 * self.max_reflections:
            raise ValidationError(
                "scan_samples must be at least 4 * max_reflections"
            )
        if self.angle_tolerance <= 0.0 or self.dedupe_tolerance <= 0.0:
            raise ValidationError("tolerances must be positive")
        if self.return_radius < 0.0:
            raise ValidationError("return_radius must be >= 0")


def default_search_config(wedge: WedgeGeometry) -> OrbitSearchConfig:
    """Reflection budget covering the full catalog: 2N-1 bounces, where N is
    rounded up for wedges whose opening angle is not pi/N."""
    n = wedge.n_integer or math.ceil(math.pi / wedge.opening_angle)
    return OrbitSearchConfig(max_reflections=2 * n - 1)


def find_numeric(
    wedge: WedgeGeometry, ion: IonPosition, cfg: OrbitSearchConfig
) -> list[ClosedOrbit]:
    """Shooting search for closed orbits of a wedge with any opening angle.

    Scans launch azimuths over the interior fan (right surface to left
    surface), brackets sign changes of the perpendicular miss distance at
    each reflection count, and refines the brackets by bisection.  Launches
    that graze the apex are skipped with a log record; an empty catalog is a
    valid result, not an error.
    """
    start = ion_cartesian(wedge, ion)
    return_radius = cfg.return_radius or 1e-6 * ion.rho
    fan_lo = wedge.right_surface_azimuth
    fan_hi = wedge.left_surface_azimuth
    step = (fan_hi - fan_lo) / cfg.scan_samples

    def sample(phi: float) -> dict[int, Approach] | None:
        try:
            path = trace(
                wedge, start, (math.cos(phi), math.sin(phi)), cfg.max_reflections
            )
        except ApexSingularityError:
            return None
        return {a.reflections: a for a in path.approaches}

    # Midpoint sampling keeps the endpoints (launches parallel to a surface)
    # out of the grid.
    grid: list[tuple[float, dict[int, Approach] | None]] = [
        (fan_lo + (i + 0.5) * step, None) for i in range(cfg.scan_samples)
    ]
    grid = [(phi, sample(phi)) for phi, _ in grid]

    roots: list[tuple[float, Approach]] = []
    for phi, approaches in grid:
        if approaches is None:
            continue
        for app in approaches.values():
            # A sample landing exactly on a closed orbit is already a root.
            if app.signed_miss == 0.0:
                roots.append((phi, app))
    for (phi_a, sa), (phi_b, sb) in zip(grid, grid[1:]):
        if sa is None or sb is None:
            continue
        for m, app_a in sa.items():
            app_b = sb.get(m)
            if app_b is None:
                continue
            if app_a.signed_miss * app_b.signed_miss < 0.0:
                found = _refine(phi_a, phi_b, app_a.signed_miss, m, sample, cfg)
                if found is not None and found[1].distance <= return_radius:
                    roots.append(found)

    roots.sort(key=lambda r: r[0] % TWO_PI)
    orbits: list[ClosedOrbit] = []
    for phi, app in roots:
        phi = phi % TWO_PI
        if orbits:
            last = orbits[-1]
            gap = abs(phi - last.phi_out)
            if min(gap, TWO_PI - gap) <= cfg.dedupe_tolerance and app.reflections == last.m:
                continue
        orbits.append(
            ClosedOrbit(
                index=len(orbits) + 1,
                phi_out=phi,
                phi_ret=app.direction_azimuth,
                m=app.reflections,
                length=app.path_length,
            )
        )
    return orbits


#: Interior split points tried in turn when the bisection midpoint loses the
#: bracketed reflection count or grazes the apex.
_SPLIT_FRACTIONS = (0.5, 0.57, 0.43, 0.65, 0.35)


def _refine(lo, hi, miss_lo, m, sample, cfg) -> tuple[float, Approach] | None:
    """Bisect one sign change of the miss distance at reflection count m."""
    while hi - lo > cfg.angle_tolerance:
        for frac in _SPLIT_FRACTIONS:
            phi = lo + frac * (hi - lo)
            approaches = sample(phi)
            if approaches is not None and m in approaches:
                break
        else:
            log.warning(
                "abandoning bracket near phi=%.12f (m=%d): "
                "no usable split point", 0.5 * (lo + hi), m,
            )
            return None
        miss = approaches[m].signed_miss
        if miss == 0.0:
            lo = hi = phi
            break
        if (miss > 0.0) == (miss_lo > 0.0):
            lo, miss_lo = phi, miss
        else:
            hi = phi
    root = 0.5 * (lo + hi)
    # The exactly closed launch can graze the apex (a corner-reflector orbit
    # passes through it); measure a hair to the side if it does.
    for phi in (root, root + 2.0 * cfg.angle_tolerance, root - 2.0 * cfg.angle_tolerance):
        approaches = sample(phi)
        if approaches is not None and m in approaches:
            return root, approaches[m]
    log.warning("root near phi=%.12f (m=%d) grazes the apex; skipped", root, m)
    return None
