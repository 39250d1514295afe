"""Interaction part of the second-order isotherm length as a function of B."""
import argparse

import numpy as np

from thermolen.eos import VirialEos
from thermolen.length import isotherm_length_quadrature, second_order_split


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T", type=float, default=300.0)
    ap.add_argument("--v1", type=float, default=0.012)
    ap.add_argument("--v2", type=float, default=0.12)
    ap.add_argument("--R", type=float, default=8.314)
    ap.add_argument("--points", type=int, default=11)
    args = ap.parse_args()
    print("B,ideal,interaction,total,quadrature,rel_dev")
    for B in np.linspace(-2e-3, 2e-3, args.points):
        B = float(B)
        ideal, inter = second_order_split(args.R, args.T, B, args.v1, args.v2)
        quad = isotherm_length_quadrature(VirialEos.virial([B], args.R),
                                          args.T, args.v1, args.v2).value
        total = ideal + inter
        print(f"{B:.6g},{ideal:.12g},{inter:.12g},{total:.12g},{quad:.12g},"
              f"{abs(total - quad) / quad:.2e}")


if __name__ == "__main__":
    main()
