"""Print the Möbius transform matrix of Q(N) with ternary-order row and column labels.

    python3 scripts/show_transform_matrix.py --n 2
"""
import argparse

from bicap.lattice import enumerate_q
from bicap.moebius import transform_matrix


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    args = ap.parse_args()
    labels = [str(x) for x in enumerate_q(args.n)]
    t = transform_matrix(args.n)
    w = max(len(s) for s in labels)
    print(" " * w, " ".join(s.rjust(w) for s in labels))
    for lab, row in zip(labels, t):
        print(lab.rjust(w), " ".join((str(int(c)) if c else ".").rjust(w) for c in row))


if __name__ == "__main__":
    main()
