"""Lower and upper delta bounds as a -> 0 with b fixed; both approach 2/b."""
import argparse
from fractions import Fraction

from bundledelta.bundle import load_bundle
from bundledelta.delta import limit_check_small_a


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spec", default="specs/one_step_demo.toml")
    ap.add_argument("-b", type=Fraction, default=Fraction(1))
    ap.add_argument("--steps", type=int, default=16)
    args = ap.parse_args()
    target = 2 / args.b
    print(f"{'a':>14} {'lower':>14} {'upper':>14} {'gap':>12} {'|upper-2/b|':>12}")
    for a, lo, hi in limit_check_small_a(args.b, load_bundle(args.spec), args.steps):
        print(f"{float(a):14.8g} {float(lo):14.10f} {float(hi):14.10f} {float(hi - lo):12.3e} "
              f"{float(abs(hi - target)):12.3e}")


if __name__ == "__main__":
    main()
