"""Search random S-model instances for projected rotations whose added and
removed original edges overlap, or whose cycle passes an original worker twice.

    python3 scripts/delta_search.py [--n 300] [--start 0] [--max-replicated 12]
"""

import argparse
import logging

from stablerot.bruteforce import brute_precedence, brute_stable
from stablerot.generators import random_smodel
from stablerot.poset import build_poset
from stablerot.sequential import project_poset, replicate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--max-replicated", type=int, default=12)
    ap.add_argument("--check", action="store_true", help="also compare projected rotations to brute force")
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    n_rot = overlap = repeated = mismatched = 0
    for seed in range(args.start, args.start + args.n):
        s = random_smodel(seed, args.max_replicated)
        inst, rmap = replicate(s)
        proj = project_poset(s, rmap, build_poset(inst))
        n_rot += len(proj.rotations)
        for i, r in enumerate(proj.rotations):
            if r.delta:
                overlap += 1
                print(f"seed {seed}: rotation {i} overlap {s.labels(r.delta)}"
                      f" plus {s.labels(r.plus)} minus {s.labels(r.minus)}")
            if r.repeated_workers:
                repeated += 1
                print(f"seed {seed}: rotation {i} passes {list(r.repeated_workers)} twice")
        if args.check and len(proj.rotations):
            rots, _ = brute_precedence(s, brute_stable(s))
            if {r.pair for r in proj.rotations} != set(rots):
                mismatched += 1
                print(f"seed {seed}: projected rotations differ from the brute-force lattice")
    print(f"{args.n} instances, {n_rot} rotations, {overlap} with overlap, "
          f"{repeated} with a repeated worker, {mismatched} mismatches")


if __name__ == "__main__":
    main()
