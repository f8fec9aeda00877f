"""Print which (N, D) admit a contradiction from this construction.

    python scripts/existence_table.py --parties 3..12 --dim 2..16
    python scripts/existence_table.py --parties 3..5 --dim 2..6 --certify
"""

import argparse

from ghzq.cli import parse_range
from ghzq.criterion import admissible_constructions
from ghzq.lhv_engine import certify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--parties", type=parse_range, default=(3, 10))
    ap.add_argument("--dim", type=parse_range, default=(2, 12))
    ap.add_argument("--certify", action="store_true", help="run full certificates (slow for big cells)")
    ap.add_argument("--lhv-bound", type=int, default=10**7)
    args = ap.parse_args()

    dims = range(args.dim[0], args.dim[1] + 1)
    print("| N \\ D | " + " | ".join(str(D) for D in dims) + " |")
    print("|---" * (len(dims) + 1) + "|")
    for N in range(args.parties[0], args.parties[1] + 1):
        cells = []
        for D in dims:
            crit = admissible_constructions(N, D)
            if crit.chosen is None:
                cells.append(".")
                continue
            mark = str(crit.chosen.N2)
            if args.certify:
                cert = certify(crit.chosen, lhv_bound=args.lhv_bound)
                mark += "*" if cert.lhv_search.status == "exhaustive" else "~"
                if not cert.contradiction:
                    mark += "!"
            cells.append(mark)
        print(f"| {N} | " + " | ".join(cells) + " |")
    print()
    print("entry = smallest admissible N2; '.' = none")
    if args.certify:
        print("* brute-force verified, ~ analytic only, ! certificate failed")


if __name__ == "__main__":
    main()
