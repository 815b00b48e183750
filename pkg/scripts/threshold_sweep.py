"""For a one-step bundle, sweep a and print the least b past which the
fibre bound 1/S(L,F) is certified equal to delta, with a check just below."""
import argparse
from fractions import Fraction

from bundledelta.bundle import load_bundle
from bundledelta.delta import b_exactness_threshold, delta_bounds
from bundledelta.divisors import DivisorClass


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spec", default="specs/one_step_demo.toml")
    ap.add_argument("--amax", type=Fraction, default=Fraction(4))
    ap.add_argument("--steps", type=int, default=16)
    args = ap.parse_args()
    b = load_bundle(args.spec)
    print(f"{'a':>8} {'b*':>14} {'b*/a':>10} {'exact at b*':>12} {'exact at 0.99 b*':>17}")
    for k in range(1, args.steps + 1):
        a = args.amax * k / args.steps
        bstar = b_exactness_threshold(a, b)
        at = delta_bounds(DivisorClass(a, bstar), b).exact
        below = bstar - abs(bstar) / 100
        below_txt = "-"
        if below > -a * b.mu_min:
            below_txt = str(delta_bounds(DivisorClass(a, below), b).exact)
        print(f"{float(a):8.4f} {float(bstar):14.8f} {float(bstar / a):10.6f} {str(at):>12} {below_txt:>17}")


if __name__ == "__main__":
    main()
