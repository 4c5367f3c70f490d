"""Regenerate the frozen random corpus used by the test suite.

    python3 scripts/make_corpus.py [--n 240] [--out tests/data/corpus.json]
"""

import argparse
import json
from pathlib import Path

from stablerot.generators import corpus_entry


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=240)
    ap.add_argument("--base-seed", type=int, default=0)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests/data/corpus.json"))
    args = ap.parse_args()
    docs = [corpus_entry(k, args.base_seed) for k in range(args.n)]
    Path(args.out).write_text(json.dumps({"base_seed": args.base_seed, "instances": docs}, sort_keys=True) + "\n")
    print(f"wrote {len(docs)} instances to {args.out}")


if __name__ == "__main__":
    main()
