"""Print the closed-orbit catalog of a wedge and cross-check it against
the shooting search.

Usage: python3 orbit_catalog.py [--n 5] [--beta pi/15] [--rho 200]
"""

import argparse

from wedge_cot.cli import format_pi_fraction, parse_angle
from wedge_cot.geometry import IonPosition, WedgeGeometry
from wedge_cot.orbits import (
    default_search_config,
    enumerate_analytic,
    exact_catalog,
    find_numeric,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--beta", default="pi/15")
    ap.add_argument("--rho", type=float, default=200.0)
    args = ap.parse_args()

    beta, beta_frac = parse_angle(args.beta)
    wedge = WedgeGeometry.from_n(args.n)
    ion = IonPosition(args.rho, beta)

    print(f"wedge alpha = pi/{args.n}, ion at rho = {args.rho} a0, "
          f"beta = {args.beta}")
    print(f"expected orbit count: 2N - 1 = {2 * args.n - 1}\n")

    if beta_frac is not None:
        print("exact catalog (angles as multiples of pi):")
        for orbit in exact_catalog(args.n, beta_frac):
            print(f"  {orbit.index}: launch {format_pi_fraction(orbit.phi_out_over_pi)}"
                  f", return {format_pi_fraction(orbit.phi_ret_over_pi)}"
                  f", {orbit.m} bounce(s),"
                  f" L = 2*rho*|sin({format_pi_fraction(orbit.chord_over_pi)})|")
        print()

    analytic = enumerate_analytic(args.n, ion)
    numeric = find_numeric(wedge, ion, default_search_config(wedge))
    print(f"numeric shooting search found {len(numeric)} orbits:")
    by_phi = {round(o.phi_out, 6): o for o in analytic}
    for orbit in numeric:
        partner = by_phi.get(round(orbit.phi_out, 6))
        gap = abs(orbit.length - partner.length) if partner else float("nan")
        print(f"  phi_out = {orbit.phi_out:.12f}, m = {orbit.m}, "
              f"L = {orbit.length:.6f} a0  (analytic gap {gap:.2e})")


if __name__ == "__main__":
    main()
