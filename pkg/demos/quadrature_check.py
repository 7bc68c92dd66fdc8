"""Check the detachment overlap integral against its closed form.

The three-dimensional quadrature is the slow, assumption-free route to
the same number the closed form produces instantly; agreement across
momenta is the evidence that the closed form was derived correctly.
"""

import math

import numpy as np

from wedge_cot.constants import DEFAULT_CONSTANTS
from wedge_cot.oracle import closed_form_overlap, overlap_with_estimate
from wedge_cot.spectrum import Polarization


def main():
    consts = DEFAULT_CONSTANTS
    k_b = consts.k_b
    pol = Polarization.x()
    outgoing = (1.0, 0.0, 0.0)  # detached electron along the polarization

    print(f"bound-state momentum scale k_b = {k_b:.6f} au\n")
    print("      k        quadrature Im       closed form Im     |diff|    estimate")
    for k in (0.05, 0.1, k_b, 0.5, 1.0):
        value, estimate = overlap_with_estimate(k, pol, outgoing)
        reference = closed_form_overlap(k, pol, outgoing)
        diff = abs(value - reference)
        print(f"  {k:7.4f} {value.imag:19.12e} {reference.imag:19.12e}"
              f" {diff:9.2e} {estimate:9.2e}")

    # the quadrature also reports its own error honestly
    worst = max(
        abs(overlap_with_estimate(k, pol, outgoing)[0]
            - closed_form_overlap(k, pol, outgoing))
        / (8.0 * consts.b_norm * k * math.pi / (k_b**2 + k**2) ** 2)
        for k in np.linspace(0.05, 1.0, 20)
    )
    print(f"\nworst relative deviation over a 20-point scan: {worst:.2e}")


if __name__ == "__main__":
    main()
