"""Print the sign e_k with star o coboundary^k o star^-1 = e_k * boundary, per degree."""
import argparse

from jps.homology import STAR_SIGNS, star_intertwining_sign
from jps.poisson import j_preset, k_preset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=8)
    args = ap.parse_args()
    for S in (j_preset(2, 3, 5), k_preset(2)):
        print(f"{S.name} {S.describe()['params']}")
        for k in range(4):
            signs = [star_intertwining_sign(S, k, d) for d in range(args.max_degree + 1)]
            # 0: both maps vanish on the slice; None: no single sign works
            print(f"  k={k}: per degree {signs}  recorded {STAR_SIGNS[k]:+d}")


if __name__ == "__main__":
    main()
