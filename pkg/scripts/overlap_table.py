"""Minimum eigenbasis overlap between X(0) and X(1/N2), per dimension.

Strictly positive minima mean no sub-dimensional block structure is shared.
"""

import sys
from fractions import Fraction

from ghzq.criterion import genuinely_ddim_check


def main(max_dim=12, max_n2=6):
    print("D  " + "".join(f"N2={n2:<10d}" for n2 in range(2, max_n2 + 1)))
    for D in range(2, max_dim + 1):
        row = [genuinely_ddim_check(D, 0, Fraction(1, n2)).min_overlap for n2 in range(2, max_n2 + 1)]
        print(f"{D:<3d}" + "".join(f"{v:<13.6g}" for v in row))


if __name__ == "__main__":
    main(*map(int, sys.argv[1:]))
