"""Run the closed-form vs quadrature grid for each bundled config and summarise verdicts."""
import argparse
from collections import Counter

from thermolen.config import BUNDLED, load_config
from thermolen.verify import run_verification


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("configs", nargs="*", default=list(BUNDLED))
    args = ap.parse_args()
    for name in args.configs:
        rows = run_verification(load_config(name).to_eos())
        counts = Counter(r.verdict for r in rows)
        worst = max((r.rel_dev for r in rows if r.verdict != "SKIP"), default=float("nan"))
        print(f"{name:12s} rows={len(rows):3d} {dict(sorted(counts.items()))} "
              f"worst_rel_dev={worst:.3e}")


if __name__ == "__main__":
    main()
