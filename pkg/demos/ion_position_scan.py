"""How the oscillation strength moves with the ion's position.

Two scans at fixed photon energy: radial (the 1/L envelope dies off as
the ion recedes from the apex) and angular (polarization selects which
wall enhances the signal as the ion approaches it).
"""

import numpy as np

from wedge_cot.geometry import BETA_MIN, IonPosition, WedgeGeometry
from wedge_cot.spectrum import Polarization, ReflectionModel
from wedge_cot.sweeps import position_sweep

N = 5
E_PHOTON_EV = 1.0


def main():
    wedge = WedgeGeometry.from_n(N)
    ion = IonPosition(200.0, wedge.opening_angle / 3.0)
    hard = ReflectionModel.hard()

    radial = position_sweep("rho", 50.0, 800.0, 1024, E_PHOTON_EV,
                            wedge, ion, Polarization.x(), hard)
    osc = np.abs(radial.column("sigma_osc_au"))
    rho = radial.column("rho_a0")
    half = len(osc) // 2
    print(f"radial scan at {E_PHOTON_EV} eV:")
    print(f"  |sigma_osc| max over rho < {rho[half]:.0f} a0: {osc[:half].max():.4f} au")
    print(f"  |sigma_osc| max over rho > {rho[half]:.0f} a0: {osc[half:].max():.4f} au")

    alpha = wedge.opening_angle
    edge = 1024 // 16
    print("\nangular scan, ion swept wall to wall:")
    for name, pol in (("x", Polarization.x()), ("y", Polarization.y())):
        sweep = position_sweep("beta", BETA_MIN, alpha - BETA_MIN, 1024,
                               E_PHOTON_EV, wedge, ion, pol, hard)
        osc = np.abs(sweep.column("sigma_osc_au"))
        print(f"  pol {name}: near left wall {osc[:edge].max():.4f}, "
              f"interior {osc[edge:-edge].max():.4f}, "
              f"near right wall {osc[-edge:].max():.4f} au")


if __name__ == "__main__":
    main()
