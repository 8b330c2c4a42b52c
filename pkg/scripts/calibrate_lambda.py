"""Find the global sign that makes the k-form quadrics reproduce the printed bracket table.

Tries both readings of the second quadric (x1^2 or x2^2 as its leading square)
and lambda = +1 / -1, at a few values of k, and prints which combinations match.
"""
import argparse
from fractions import Fraction

from jps.poisson import PoissonStructure, expected_k_table
from jps.polyring import parse_poly

READINGS = {
    "printed (x1^2 + x4^2)": "1/2*x1^2 + 1/2*x4^2 + k*x1*x3",
    "corrected (x2^2 + x4^2)": "1/2*x2^2 + 1/2*x4^2 + k*x1*x3",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", nargs="*", default=["2", "5/3", "-7/2"])
    args = ap.parse_args()
    for ks in args.k:
        k = Fraction(ks)
        q1 = parse_poly("1/2*x1^2 + 1/2*x3^2 + k*x2*x4", {"k": k})
        exp = expected_k_table(k)
        for label, text in READINGS.items():
            q2 = parse_poly(text, {"k": k})
            for lam in (1, -1):
                try:
                    S = PoissonStructure(q1, q2, lam)
                except ValueError as e:
                    print(f"k={k} {label} lambda={lam:+d}: invalid ({e})")
                    continue
                hits = sum(S.pi[p] == v for p, v in exp.items())
                print(f"k={k} {label} lambda={lam:+d}: {hits}/{len(exp)} table entries match")


if __name__ == "__main__":
    main()
