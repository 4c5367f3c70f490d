"""Oracle-call counts against |E|^2 and |E||V| on the frozen corpus and on
larger random instances (beyond brute-force range).

    python3 scripts/measure_complexity.py [--large 200] [--seed 1]
"""

import argparse
import json
from pathlib import Path

from stablerot.generators import RandomConfig, corpus_entry, random_instance
from stablerot.instance import load_instance
from stablerot.optimal import compute_xmin
from stablerot.poset import build_poset

CORPUS = Path(__file__).resolve().parents[1] / "tests/data/corpus.json"


def measure(inst):
    inst.reset_calls()
    compute_xmin(inst)
    xmin = inst.oracle_calls()
    inst.reset_calls()
    P = build_poset(inst)
    e, v = inst.n_edges, inst.n_vertices
    return {"E": e, "V": v, "rotations": len(P), "xmin_ratio": xmin / (e * v),
            "poset_ratio": P.oracle_calls / e**2}


def summarize(name, rows):
    by_rot = {}
    for r in rows:
        by_rot.setdefault(r["rotations"], []).append(r)
    print(f"{name}: {len(rows)} instances")
    print(f"  max xmin calls / (|E||V|)  = {max(r['xmin_ratio'] for r in rows):.3f}")
    print(f"  max poset calls / |E|^2    = {max(r['poset_ratio'] for r in rows):.3f}")
    for k in sorted(by_rot):
        rs = by_rot[k]
        print(f"  |R| = {k:2d}: {len(rs):4d} instances, max poset ratio {max(r['poset_ratio'] for r in rs):.3f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--large", type=int, default=200, help="number of larger random instances")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if CORPUS.exists():
        docs = json.loads(CORPUS.read_text())["instances"]
    else:
        docs = [corpus_entry(k, 0) for k in range(240)]
    summarize("corpus", [measure(load_instance(d)) for d in docs])

    cfg = RandomConfig(max_workers=12, max_firms=12, max_edges=80, max_worker_quota=3)
    rows = [measure(random_instance(args.seed * 100000 + k, cfg)) for k in range(args.large)]
    summarize("large", rows)


if __name__ == "__main__":
    main()
