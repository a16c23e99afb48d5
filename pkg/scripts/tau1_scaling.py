"""Timing sweep of the fixed-parameter solver on the two-transversal ladder
family (no-instances that force a full tuple sweep).

Usage: python scripts/tau1_scaling.py [--sizes 25,50,100,200]
"""

import argparse
import time

from cyclepair.instances import tau1_scaling_instance
from cyclepair.tau1 import solve_tau1
from cyclepair.transversal import compute_tau_capped


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="25,50,100,200")
    args = ap.parse_args()

    print("paths/segment  vertices  tau-time  solve-time  verdict")
    for ell in (int(x) for x in args.sizes.split(",")):
        d = tau1_scaling_instance(ell)
        t0 = time.perf_counter()
        tau = compute_tau_capped(d)
        t1 = time.perf_counter()
        verdict, _ = solve_tau1(d, tau)
        t2 = time.perf_counter()
        print(
            f"{ell:>13}  {d.n:>8}  {t1 - t0:>7.2f}s  {t2 - t1:>9.2f}s  {verdict}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
