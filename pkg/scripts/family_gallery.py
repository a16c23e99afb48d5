"""Generate one instance per structure family, solve each, and print the
routes; a quick smoke tour of the whole pipeline.

Usage: python scripts/family_gallery.py [--seed 0]
"""

import argparse
import random

from cyclepair.digraph import format_digraph
from cyclepair.instances import attach_externals
from cyclepair.pipeline import solve
from cyclepair.structures import gen_multiwheel, gen_trivault, gen_vault


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--dump", action="store_true", help="also print the graph files")
    args = ap.parse_args()

    rows = []
    rng = random.Random(args.seed)
    vault, _ = gen_vault(rng, ell=5, max_wall=2, subdivision_prob=0.2)
    rows.append(("niche-free vault", vault))
    nv, _ = gen_vault(rng, ell=5, max_wall=2, plant_niche=True)
    rows.append(("planted-niche vault", nv))
    mw, _ = gen_multiwheel(rng, p=4, split=True, max_spokes=2)
    rows.append(("split multiwheel", mw))
    tv, _ = gen_trivault(rng, subdivision_prob=0.2)
    rows.append(("trivault", tv))
    rows.append(("vault with externals", attach_externals(vault, rng, externals=2)))

    for name, d in rows:
        rep = solve(d)
        print(f"{name:24} n={d.n:<3} verdict={rep.verdict:<3} route={rep.route}")
        if args.dump:
            print(format_digraph(d))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
