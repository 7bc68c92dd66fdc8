"""Recover orbit lengths from the oscillating cross section alone.

Scans sigma_osc on a uniform electron-momentum grid, Fourier transforms
the scan, and compares each detected peak against the geometric catalog.
A wedge of opening angle pi/5 has nine orbits but only seven distinct
lengths: time-reversed partners retrace the same chord.
"""

import math

import numpy as np

from wedge_cot.constants import DEFAULT_CONSTANTS
from wedge_cot.geometry import IonPosition, WedgeGeometry
from wedge_cot.oracle import action_spectrum
from wedge_cot.orbits import enumerate_analytic
from wedge_cot.spectrum import Polarization, ReflectionModel, sigma_total

N = 5
RHO = 200.0


def main():
    wedge = WedgeGeometry.from_n(N)
    ion = IonPosition(RHO, math.pi / 15)
    hard = ReflectionModel.hard()
    consts = DEFAULT_CONSTANTS

    k_grid = np.linspace(0.5, 2.1, 4096)
    osc = np.array([
        sigma_total(0.5 * k * k * consts.ev_per_hartree
                    + consts.binding_energy_ev,
                    wedge, ion, Polarization.x(), hard).sigma_osc
        for k in k_grid
    ])
    spectrum = action_spectrum(np.stack([k_grid, osc], axis=1))

    lengths = sorted({o.length for o in enumerate_analytic(N, ion)})
    bin_width = 2.0 * math.pi / (len(k_grid) * (k_grid[1] - k_grid[0]))
    print(f"grid resolution: {bin_width:.3f} a0 per bin")
    print(f"{len(lengths)} distinct orbit lengths, "
          f"{len(spectrum.peaks)} detected peaks\n")
    print("  catalog L (a0)   detected L (a0)   offset/bin   magnitude")
    for true_length, (peak, magnitude) in zip(
            lengths, sorted(spectrum.peaks)):
        offset = abs(peak - true_length) / bin_width
        print(f"  {true_length:14.4f} {peak:17.4f} {offset:12.3f}"
              f" {magnitude:11.4f}")


if __name__ == "__main__":
    main()
