"""Split the oscillating cross section into per-orbit terms.

Each closed orbit contributes a sinusoid weighted by 1/L and by the
polarization's projection on its launch and return directions, so the
shortest orbit usually dominates and orbits orthogonal to the light
drop out.
"""

import numpy as np

from wedge_cot.geometry import IonPosition, WedgeGeometry
from wedge_cot.orbits import enumerate_analytic
from wedge_cot.spectrum import Polarization, ReflectionModel
from wedge_cot.sweeps import orbit_decomposition

N = 5
RHO = 200.0


def main():
    wedge = WedgeGeometry.from_n(N)
    ion = IonPosition(RHO, wedge.opening_angle / 3.0)
    hard = ReflectionModel.hard()
    catalog = enumerate_analytic(N, ion)

    for name, pol in (("x", Polarization.x()), ("y", Polarization.y())):
        ds = orbit_decomposition(0.76, 1.4, 1024, wedge, ion, pol, hard)
        print(f"polarization {name}: per-orbit oscillation amplitude")
        ranked = sorted(
            ((np.abs(ds.column(f"term_{o.index}_au")).max(), o)
             for o in catalog),
            reverse=True, key=lambda pair: pair[0],
        )
        for amplitude, orbit in ranked:
            bar = "#" * int(round(40 * amplitude / ranked[0][0]))
            print(f"  orbit {orbit.index} (L = {orbit.length:7.2f} a0, "
                  f"m = {orbit.m}): {amplitude:.3e}  {bar}")
        total = np.abs(ds.column("sigma_osc_total_au")).max()
        print(f"  full sum amplitude: {total:.3e}\n")


if __name__ == "__main__":
    main()
