"""Time the fast Möbius/zeta round trip and the interaction table as n grows.

Writes CSV to stdout: n, points, roundtrip seconds, max error, table seconds.
"""
import argparse
import csv
import sys
import time

import numpy as np

from bicap.game import random_game
from bicap.indices import interaction_table
from bicap.moebius import fast_moebius, fast_zeta


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    out = csv.writer(sys.stdout)
    out.writerow(["n", "points", "roundtrip_s", "max_err", "table_s"])
    for n in range(1, args.max_n + 1):
        v = random_game(n, rng)
        t0 = time.perf_counter()
        back = fast_zeta(fast_moebius(v))
        t1 = time.perf_counter()
        interaction_table(v)
        t2 = time.perf_counter()
        err = np.abs(back.values - v.values).max()
        out.writerow([n, 3 ** n, f"{t1 - t0:.4f}", f"{err:.2e}", f"{t2 - t1:.4f}"])


if __name__ == "__main__":
    main()
