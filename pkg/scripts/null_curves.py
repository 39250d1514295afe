"""Trace both null curves of the ideal gas numerically and compare with v = v0 (T/T0)**y."""
import argparse
import math

from thermolen.eos import VirialEos
from thermolen.length import null_path, path_length
from thermolen.response import CvModel, eos_response


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T0", type=float, default=300.0)
    ap.add_argument("--v0", type=float, default=0.02)
    ap.add_argument("--T1", type=float, default=600.0)
    ap.add_argument("--cv", type=float, default=12.471)
    args = ap.parse_args()
    R = 8.314
    resp = eos_response(VirialEos.ideal(R), CvModel("constant", (args.cv,)))
    root = math.sqrt(1.0 + args.cv / R)
    for branch, y in (("positive", 1.0 + root), ("negative", 1.0 - root)):
        path = null_path(resp, args.T0, args.v0, args.T1, branch)
        segs = path_length(resp, path)
        print(f"branch={branch} exponent={y:.6f}")
        for i in range(5):
            xi = i / 4
            T, v = path.T_of_xi(xi), path.v_of_xi(xi)
            exact = args.v0 * (T / args.T0) ** y
            print(f"  T={T:9.3f} v={v:.12e} analytic={exact:.12e} rel={abs(v - exact) / exact:.1e}")
        print("  segments: " + ", ".join(f"{s.character.value} residual={s.residual:.2e}"
                                         for s in segs))


if __name__ == "__main__":
    main()
