"""Interaction indices of a CPT game built from two random capacities.

Mixed pairs (S and T both nonempty) come out as zero; the pure blocks match
the classical interaction of ν1 and of the conjugate of ν2.
"""
import argparse

import numpy as np

from bicap.game import conjugate, make_cpt, random_capacity
from bicap.indices import interaction_classical, interaction_table
from bicap.lattice import enumerate_q, format_players


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    nu1, nu2 = random_capacity(args.n, rng), random_capacity(args.n, rng)
    table = interaction_table(make_cpt(nu1, nu2))
    bar2 = conjugate(nu2)
    print(f"{'S':>8} {'T':>8} {'I_S,T':>12} {'classical':>12}")
    for x in enumerate_q(args.n):
        s, t = x.pos, x.neg
        val = table.st(s, t)
        if s and not t:
            ref = f"{interaction_classical(nu1, s):12.6f}"
        elif t and not s:
            ref = f"{interaction_classical(bar2, t):12.6f}"
        else:
            ref = " " * 12
        print(f"{format_players(s):>8} {format_players(t):>8} {val:12.6f} {ref}")


if __name__ == "__main__":
    main()
