import json
from functools import lru_cache
from pathlib import Path

from stablerot.bruteforce import brute_stable
from stablerot.generators import random_smodel
from stablerot.instance import load_instance

DATA = Path(__file__).parent / "data"
SMODEL_COUNT = 60
SMODEL_RICH = 40  # how many of them must have two or more stable matchings


@lru_cache(maxsize=None)
def corpus_docs():
    return tuple(json.loads((DATA / "corpus.json").read_text())["instances"])


def corpus_instances():
    return [load_instance(d) for d in corpus_docs()]


@lru_cache(maxsize=None)
def smodel_seeds(n=SMODEL_COUNT, rich=SMODEL_RICH):
    """Seeds in increasing order; selection looks only at the brute-force count."""
    picked, n_rich, n_flat, seed = [], 0, 0, 0
    while n_rich < rich or n_flat < n - rich:
        many = len(brute_stable(random_smodel(seed)).stable) > 1
        if many and n_rich < rich:
            picked.append(seed)
            n_rich += 1
        elif not many and n_flat < n - rich:
            picked.append(seed)
            n_flat += 1
        seed += 1
    return tuple(picked)


def smodel_instances(n=SMODEL_COUNT):
    return [random_smodel(s) for s in smodel_seeds(n)]


def pair_key(R):
    return (R.plus, R.minus)
