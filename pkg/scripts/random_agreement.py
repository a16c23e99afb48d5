"""Sample random multidigraphs and compare the pipeline against the oracle.

Usage: python scripts/random_agreement.py [--count 1000] [--max-vertices 12]
       [--max-arcs 24] [--seed-base 0]
"""

import argparse
import random
import time
from collections import Counter

from cyclepair.cycles import verify_certificate
from cyclepair.instances import random_multidigraph
from cyclepair.oracle import oracle_solve
from cyclepair.pipeline import solve


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--max-vertices", type=int, default=12)
    ap.add_argument("--max-arcs", type=int, default=24)
    ap.add_argument("--seed-base", type=int, default=0)
    args = ap.parse_args()

    t0 = time.perf_counter()
    routes = Counter()
    mismatches = []
    for i in range(args.count):
        d = random_multidigraph(
            random.Random(args.seed_base + i),
            max_vertices=args.max_vertices,
            max_arcs=args.max_arcs,
        )
        rep = solve(d)
        routes[rep.route] += 1
        want = oracle_solve(d)
        if rep.verdict != want.verdict:
            mismatches.append(args.seed_base + i)
        elif rep.certificate is not None and not verify_certificate(d, rep.certificate):
            mismatches.append(args.seed_base + i)
    elapsed = time.perf_counter() - t0

    print(f"instances: {args.count}")
    print(f"elapsed: {elapsed:.2f}s")
    print(f"mismatching seeds: {mismatches if mismatches else 'none'}")
    for route, k in sorted(routes.items()):
        print(f"route {route}: {k}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
