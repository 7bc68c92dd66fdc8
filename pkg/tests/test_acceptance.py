"""End-to-end acceptance checks.

Each test prints one `[criterion N] name: PASS|FAIL` line so a log scan
shows the verdicts without digging through tracebacks.  Run with
`pytest -s tests/test_acceptance.py` to see the lines as they appear.
"""

import contextlib
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from wedge_cot.cli import format_pi_fraction
from wedge_cot.constants import DEFAULT_CONSTANTS
from wedge_cot.geometry import BETA_MIN, IonPosition, WedgeGeometry
from wedge_cot.oracle import (
    action_spectrum,
    angular_integral_check,
    closed_form_overlap,
    overlap_with_estimate,
    radial_integral,
)
from wedge_cot.orbits import (
    default_search_config,
    enumerate_analytic,
    exact_catalog,
    find_numeric,
)
from wedge_cot.spectrum import (
    Polarization,
    ReflectionModel,
    angular_factor,
    energy_conversion,
    sigma_background,
    sigma_total,
    sigma_x_closed_form,
    sigma_y_closed_form,
    sigma_z_closed_form,
)
from wedge_cot.sweeps import polarization_map, position_sweep

WEDGE5 = WedgeGeometry.from_n(5)
ION_REF = IonPosition(200.0, math.pi / 15)
HARD = ReflectionModel.hard()
BETA_FRACTIONS = (0.1, 1 / 3, 0.5, 2 / 3, 0.9)


@contextlib.contextmanager
def criterion(num, name):
    try:
        yield
    except BaseException:
        print(f"[criterion {num}] {name}: FAIL")
        raise
    print(f"[criterion {num}] {name}: PASS")


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "wedge_cot", *argv],
        capture_output=True, text=True, check=True,
    )


def photon_ev_for_k(k):
    consts = DEFAULT_CONSTANTS
    return 0.5 * k * k * consts.ev_per_hartree + consts.binding_energy_ev


def test_criterion_1_orbit_table_via_cli():
    with criterion(1, "orbit table via CLI"):
        t0 = time.perf_counter()
        proc = run_cli("orbits", "--n", "5", "--beta", "pi/15")
        elapsed = time.perf_counter() - t0
        rows = [line.split() for line in proc.stdout.strip().splitlines()[1:]]
        catalog = exact_catalog(5, Fraction(1, 15))
        assert len(rows) == 9 == len(catalog)
        for row, orbit in zip(rows, catalog):
            assert row[0] == str(orbit.index)
            assert row[1] == format_pi_fraction(orbit.phi_out_over_pi)
            assert row[2] == format_pi_fraction(orbit.phi_ret_over_pi)
            assert row[3] == str(orbit.m)
            chord = format_pi_fraction(orbit.chord_over_pi)
            assert row[4] == f"2*rho*|sin({chord})|"
            expected = 2.0 * 200.0 * abs(math.sin(float(orbit.chord_over_pi) * math.pi))
            assert abs(float(row[5]) - expected) <= 1e-14 * expected
        assert elapsed < 1.0


def test_criterion_2_orbit_count_law():
    with criterion(2, "orbit count law"):
        t0 = time.perf_counter()
        for n in range(1, 13):
            alpha = math.pi / n
            for frac in BETA_FRACTIONS:
                ion = IonPosition(200.0, frac * alpha)
                orbits = enumerate_analytic(n, ion)
                assert len(orbits) == 2 * n - 1, (n, frac)
        assert time.perf_counter() - t0 < 1.0


def test_criterion_3_numeric_search_matches_analytic():
    with criterion(3, "numeric search matches analytic catalog"):
        t0 = time.perf_counter()
        for n in range(1, 9):
            wedge = WedgeGeometry.from_n(n)
            alpha = wedge.opening_angle
            for frac in BETA_FRACTIONS:
                ion = IonPosition(200.0, frac * alpha)
                analytic = sorted(enumerate_analytic(n, ion),
                                  key=lambda o: o.phi_out)
                numeric = sorted(find_numeric(wedge, ion,
                                              default_search_config(wedge)),
                                 key=lambda o: o.phi_out)
                assert len(numeric) == len(analytic), (n, frac)
                for a, b in zip(analytic, numeric):
                    assert abs(a.phi_out - b.phi_out) <= 1e-9, (n, frac)
                    assert abs(a.length - b.length) <= 1e-9 * a.length, (n, frac)
                    assert a.m == b.m, (n, frac)
        assert time.perf_counter() - t0 < 30.0


def test_criterion_4_closed_forms_match_orbit_sums():
    with criterion(4, "closed forms match orbit sums"):
        t0 = time.perf_counter()
        rng = np.random.default_rng(42)
        energies = np.linspace(0.76, 1.4, 50)
        for n in (1, 2, 3, 5, 8):
            wedge = WedgeGeometry.from_n(n)
            alpha = wedge.opening_angle
            for _ in range(20):
                rho = rng.uniform(50.0, 500.0)
                beta = rng.uniform(BETA_MIN * 2, alpha - BETA_MIN * 2)
                ion = IonPosition(rho, beta)
                for e in energies:
                    sigma0 = sigma_total(e, wedge, ion, Polarization.z(),
                                         HARD).sigma0
                    for pol, closed in ((Polarization.x(), sigma_x_closed_form),
                                        (Polarization.y(), sigma_y_closed_form)):
                        summed = sigma_total(e, wedge, ion, pol, HARD).sigma
                        direct = closed(e, n, ion).sigma
                        scale = max(abs(summed), sigma0)
                        assert abs(summed - direct) <= 1e-12 * scale, (n, rho, beta, e)
                    point = sigma_total(e, wedge, ion, Polarization.z(), HARD)
                    assert abs(point.sigma_osc) <= 1e-15
                    assert sigma_z_closed_form(e).sigma == point.sigma0
        assert time.perf_counter() - t0 < 10.0


def test_criterion_5_overlap_quadrature_matches_closed_form():
    with criterion(5, "overlap quadrature matches closed form"):
        t0 = time.perf_counter()
        rng = np.random.default_rng(42)
        consts = DEFAULT_CONSTANTS
        k_b = consts.k_b
        for _ in range(50):
            k = rng.uniform(0.01, 1.0)
            pol = Polarization(rng.uniform(0.0, math.pi),
                               rng.uniform(0.0, 2.0 * math.pi))
            direction = rng.normal(size=3)
            direction = tuple(direction / np.linalg.norm(direction))
            value, estimate = overlap_with_estimate(k, pol, direction)
            reference = closed_form_overlap(k, pol, direction)
            scale = 8.0 * consts.b_norm * k * math.pi / (k_b**2 + k**2) ** 2
            assert abs(value - reference) <= 1e-6 * scale
            assert abs(value - reference) <= estimate

            radial = radial_integral(k)
            radial_ref = 2.0 * k / (k_b**2 + k**2) ** 2
            assert abs(radial - radial_ref) <= 1e-10 * radial_ref

            angular = angular_integral_check(pol, direction)
            angular_ref = (4.0 * math.pi / 3.0) * (
                math.sin(pol.theta_L) * math.cos(pol.phi_L) * direction[0]
                + math.sin(pol.theta_L) * math.sin(pol.phi_L) * direction[1]
                + math.cos(pol.theta_L) * direction[2]
            )
            assert abs(angular - angular_ref) <= 1e-10 * (4.0 * math.pi / 3.0)
        assert time.perf_counter() - t0 < 60.0


def test_criterion_6_polarization_sum_identity():
    with criterion(6, "polarization sum identity"):
        catalog = enumerate_analytic(5, ION_REF)
        for refl in (ReflectionModel.hard(), ReflectionModel.soft()):
            for e in np.linspace(0.76, 1.4, 100):
                energy, k = energy_conversion(e)
                sigma0 = sigma_background(energy)
                rhs = (3.0 * sigma0 / k) * sum(
                    math.cos(o.phi_out - o.phi_ret)
                    * math.sin(k * o.length - o.m * refl.delta) / o.length
                    for o in catalog
                )
                total = sum(
                    sigma_total(e, WEDGE5, ION_REF, pol, refl).sigma_osc
                    for pol in (Polarization.x(), Polarization.y(),
                                Polarization.z())
                )
                assert abs(total - rhs) <= 1e-12 * max(abs(rhs), sigma0)


def test_criterion_7_action_spectrum_peaks():
    with criterion(7, "action spectrum peaks at orbit lengths"):
        t0 = time.perf_counter()
        n_samples = 4096
        k_grid = np.linspace(0.5, 2.1, n_samples)
        osc = np.array([
            sigma_total(photon_ev_for_k(k), WEDGE5, ION_REF,
                        Polarization.x(), HARD).sigma_osc
            for k in k_grid
        ])
        spectrum = action_spectrum(np.stack([k_grid, osc], axis=1))
        expected = sorted({o.length for o in enumerate_analytic(5, ION_REF)})
        assert len(expected) == 7
        assert len(spectrum.peaks) == 7  # one per distinct length, none spurious
        bin_width = 2.0 * math.pi / (n_samples * (k_grid[1] - k_grid[0]))
        found = sorted(length for length, _ in spectrum.peaks)
        for true_length, peak_length in zip(expected, found):
            assert abs(peak_length - true_length) <= bin_width, true_length
        assert time.perf_counter() - t0 < 5.0


def test_criterion_8_qualitative_trends():
    with criterion(8, "qualitative position and polarization trends"):
        t0 = time.perf_counter()
        energies = np.linspace(0.76, 1.4, 512)

        # (a) the oscillation envelope shrinks as the ion recedes
        def envelope(rho):
            ion = IonPosition(rho, math.pi / 15)
            return max(abs(sigma_total(e, WEDGE5, ion, Polarization.x(),
                                       HARD).sigma_osc) for e in energies)
        assert envelope(800.0) < 0.5 * envelope(200.0)

        # (b) surface enhancement: x near both walls, y near the right wall only
        alpha = WEDGE5.opening_angle
        edge = 512 // 16
        for pol, left_enhanced in ((Polarization.x(), True),
                                   (Polarization.y(), False)):
            sweep = position_sweep("beta", BETA_MIN, alpha - BETA_MIN, 512,
                                   1.0, WEDGE5, ION_REF, pol, HARD)
            osc = np.abs(sweep.column("sigma_osc_au"))
            interior = osc[edge:-edge].max()
            assert osc[-edge:].max() > interior
            if left_enhanced:
                assert osc[:edge].max() > interior
            else:
                assert osc[:edge].max() < interior

        # (c) strongest response for in-plane polarization along x
        polmap = polarization_map(9, 8, 1.0, WEDGE5, ION_REF, HARD)
        table = np.asarray(polmap.rows)
        best = table[np.abs(table[:, 2]).argmax()]
        assert abs(best[0] - math.pi / 2) <= 1e-12
        assert min(best[1], abs(best[1] - math.pi)) <= 1e-12

        # (d) the shortest orbit carries the largest x-pol term and a
        # negligible y-pol term
        catalog = enumerate_analytic(5, ION_REF)
        shortest = min(catalog, key=lambda o: o.length)
        longest = max(catalog, key=lambda o: o.length)

        def term_envelope(orbit, e, pol):
            energy, k = energy_conversion(e)
            sigma0 = sigma_background(energy)
            f_out = angular_factor(math.pi / 2, orbit.phi_out, pol)
            f_ret = angular_factor(math.pi / 2, orbit.phi_ret, pol)
            return (3.0 * sigma0 / k) * abs(f_out * f_ret) / orbit.length

        grid = np.linspace(0.76, 1.4, 64)
        short_min = min(term_envelope(shortest, e, Polarization.x()) for e in grid)
        long_max = max(term_envelope(longest, e, Polarization.x()) for e in grid)
        assert short_min > long_max
        y_max = max(term_envelope(shortest, e, Polarization.y()) for e in grid)
        assert y_max <= 1e-30
        assert time.perf_counter() - t0 < 30.0


def test_criterion_9_byte_identical_reruns():
    with criterion(9, "byte-identical CLI reruns"):
        csv_argv = ("spectrum", "--n", "5", "--beta", "pi/15",
                    "--steps", "256")
        json_argv = ("polmap", "--theta-steps", "5", "--phi-steps", "8",
                     "--format", "json")
        for argv in (csv_argv, json_argv):
            first = run_cli(*argv).stdout
            second = run_cli(*argv).stdout
            assert first == second
            assert len(first) > 0
