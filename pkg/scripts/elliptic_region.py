"""delta and the K-semistability witnesses for a rank-2 degree-0 strictly
semistable bundle on an elliptic curve, over integer polarizations 1 <= b <= a."""
import argparse
import csv
import sys

from bundledelta.bundle import BundleData
from bundledelta.delta import delta_report
from bundledelta.divisors import DivisorClass
from bundledelta.kstability import ksemistable_sufficient


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--amax", type=int, default=20)
    args = ap.parse_args()
    e = BundleData(genus=1, rank=2, degree=0, stability="strictly_semistable", subbundle_rank=1)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["a", "b", "delta", "exact", "branch", "witness_1", "witness_2", "ks_pass"])
    for a in range(1, args.amax + 1):
        for b in range(1, a + 1):
            L = DivisorClass(a, b)
            rep = delta_report(L, e)
            v = ksemistable_sufficient(L, rep.lower, e)
            w1, w2 = v.witness_classes
            w.writerow([a, b, rep.value, rep.exact, rep.attaining_branch.value, w1, w2, v.passes])


if __name__ == "__main__":
    main()
