"""Compact instance builders and seeded random instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .instance import Instance, SModelInstance, load_instance, load_smodel


def _cf_doc(fid: str, cf: tuple) -> dict:
    """``("linear", q, [w...])`` or ``("seq", [[w...], ...])``; workers name the edges."""
    kind = cf[0]
    if kind == "linear":
        _, quota, order = cf
        return {"type": "linear_quota", "quota": quota, "order": [[w, fid] for w in order]}
    if kind == "seq":
        return {"type": "sequential", "orders": [[[w, fid] for w in o] for o in cf[1]]}
    raise ValueError(f"unknown cf kind {kind!r}")


def make_document(workers: Dict[str, tuple], firms: Dict[str, tuple]) -> dict:
    """Instance document from ``workers = {w: (quota, [f...])}`` and firm CF tuples.

    Edges are numbered worker by worker, each in preference order.
    """
    edges, wdocs = [], []
    for wid, (quota, pref) in workers.items():
        wdocs.append({"id": wid, "quota": quota, "pref": [[wid, f] for f in pref]})
        edges += [[wid, f] for f in pref]
    fdocs = [{"id": fid, "cf": _cf_doc(fid, cf)} for fid, cf in firms.items()]
    return {"workers": wdocs, "firms": fdocs, "edges": edges}


def make_smodel_document(workers: Dict[str, list], firms: Dict[str, tuple]) -> dict:
    """``workers = {w: [[f...], [f...]]}``; the first order fixes edge numbering."""
    edges, wdocs = [], []
    for wid, orders in workers.items():
        wdocs.append({"id": wid, "orders": [[[wid, f] for f in o] for o in orders]})
        edges += [[wid, f] for f in orders[0]]
    fdocs = [{"id": fid, "cf": _cf_doc(fid, cf)} for fid, cf in firms.items()]
    return {"workers": wdocs, "firms": fdocs, "edges": edges}


@dataclass(frozen=True)
class RandomConfig:
    max_workers: int = 4
    max_firms: int = 4
    max_edges: int = 12
    max_worker_quota: int = 3
    max_firm_rank: int = 3
    p_sequential: float = 0.5
    density: float = 0.95
    min_side: int = 2
    # chance that a firm ranks workers against their own preferences,
    # which is what produces many stable matchings
    p_contrarian: float = 0.95
    # chance of cyclic (Latin square) worker preferences inside each block
    p_cyclic: float = 0.8
    p_noise: float = 0.1
    # chance of two loosely coupled blocks, and the edge density between them
    p_blocks: float = 0.6
    cross_density: float = 0.15
    # chance that a quota or rank is forced to 1
    p_unit: float = 0.5


def _split(rng: random.Random, n: int, cut: int) -> list:
    groups = [0] * cut + [1] * (n - cut)
    rng.shuffle(groups)
    return groups


def _random_graph(rng: random.Random, cfg: RandomConfig):
    nw = rng.randint(min(cfg.min_side, cfg.max_workers), cfg.max_workers)
    # balanced sides give far more stable matchings than lopsided ones
    nf = max(1, min(cfg.max_firms, nw + rng.choice((-1, 0, 0, 0, 1))))
    W = [f"w{i + 1}" for i in range(nw)]
    F = [f"f{j + 1}" for j in range(nf)]
    if nw >= 2 and rng.random() < cfg.p_blocks:
        # equal-sized blocks on both sides
        F = [f"f{j + 1}" for j in range(min(nw, cfg.max_firms))]
        cut = rng.randint(1, min(len(W), len(F)) - 1)
        gw, gf = _split(rng, len(W), cut), _split(rng, len(F), cut)
    else:
        gw, gf = [0] * nw, [0] * nf
    group = {**dict(zip(W, gw)), **dict(zip(F, gf))}
    pairs = [
        (w, f) for w in W for f in F
        if rng.random() < (cfg.density if group[w] == group[f] else cfg.cross_density)
    ]
    if not pairs:
        pairs = [(rng.choice(W), rng.choice(F))]
    rng.shuffle(pairs)
    return W, F, pairs[: cfg.max_edges], group


def _slack(limit: int, degree: int) -> int:
    # a quota below the degree leaves room to move
    return max(1, min(limit, degree - 1))


def _capacity(rng: random.Random, cfg: RandomConfig, limit: int, degree: int, level=None) -> int:
    if level is not None:
        return min(level, _slack(limit, degree))
    if rng.random() < cfg.p_unit:
        return 1
    return rng.randint(1, _slack(limit, degree))


def _block_levels(rng: random.Random, cfg: RandomConfig) -> dict:
    # one shared capacity per block keeps the two sides balanced
    top = max(cfg.max_worker_quota, cfg.max_firm_rank)
    return {g: 1 if rng.random() < cfg.p_unit else rng.randint(1, top) for g in (0, 1)}


def _contrarian(rng: random.Random, incident: Sequence[str], fondness, p_noise: float) -> list:
    order = sorted(incident, key=lambda w: (fondness(w), rng.random()))
    if len(order) > 1 and rng.random() < p_noise:
        i = rng.randrange(len(order) - 1)
        order[i], order[i + 1] = order[i + 1], order[i]
    return order


def _random_firm_cf(rng: random.Random, cfg: RandomConfig, incident: Sequence[str], fondness=None,
                    level=None) -> tuple:
    incident = list(incident)

    def one():
        if fondness is not None and rng.random() < cfg.p_contrarian:
            return _contrarian(rng, incident, fondness, cfg.p_noise)
        return rng.sample(incident, len(incident))

    rank = _capacity(rng, cfg, cfg.max_firm_rank, len(incident), level)
    if rng.random() < cfg.p_sequential:
        return ("seq", [one() for _ in range(rank)])
    return ("linear", rank, one())


def _worker_orders(rng, cfg, W, F, pairs, group):
    """Preference list per worker: cyclic within its block or uniformly random."""
    cyclic = rng.random() < cfg.p_cyclic
    rings = {}
    for f in rng.sample(F, len(F)):
        rings.setdefault(group[f], []).append(f)
    out = {}
    for w in W:
        mine = [f for (v, f) in pairs if v == w]
        if not mine:
            continue
        ring = rings.get(group[w], [])
        k = [v for v in W if group[v] == group[w]].index(w)
        if cyclic:
            keys = {
                f: (ring.index(f) - k) % len(ring) if f in ring else rng.uniform(0, len(F))
                for f in mine
            }
            mine.sort(key=keys.__getitem__)
        else:
            rng.shuffle(mine)
        out[w] = mine
    return out


def random_document(rng: random.Random, cfg: RandomConfig = RandomConfig()) -> dict:
    W, F, pairs, group = _random_graph(rng, cfg)
    prefs = _worker_orders(rng, cfg, W, F, pairs, group)
    levels = _block_levels(rng, cfg)
    workers = {
        w: (_capacity(rng, cfg, cfg.max_worker_quota, len(p), levels[group[w]]), p)
        for w, p in prefs.items()
    }
    firms = {}
    for f in F:
        mine = [w for (w, g) in pairs if g == f]
        if mine:
            # workers who rank f highly come last
            firms[f] = _random_firm_cf(
                rng, cfg, mine, lambda w, f=f: -prefs[w].index(f), levels[group[f]]
            )
    return make_document(workers, firms)


def random_instance(seed: int, cfg: RandomConfig = RandomConfig()) -> Instance:
    return load_instance(random_document(random.Random(seed), cfg))


def _n_stable(doc: dict) -> int:
    from .bruteforce import brute_stable

    return len(brute_stable(load_instance(doc)).stable)


def corpus_document(seed: int, min_stable: int = 1, cfg: RandomConfig = RandomConfig(),
                    tries: int = 500) -> dict:
    """Seeded document, redrawn until brute force finds ``min_stable`` stable matchings."""
    rng = random.Random(seed)
    doc = random_document(rng, cfg)
    if min_stable <= 1:
        return doc
    for _ in range(tries):
        if _n_stable(doc) >= min_stable:
            return doc
        doc = random_document(rng, cfg)
    raise RuntimeError(f"seed {seed}: no instance with {min_stable} stable matchings")


# cycle of lower bounds on the stable set size across the corpus
RICHNESS = (1, 2, 3, 4, 1, 3)


CORPUS_CONFIGS = (
    RandomConfig(min_side=2),
    RandomConfig(min_side=3, p_unit=0.7),
    RandomConfig(min_side=3, p_unit=0.1, p_blocks=0.2, density=1.0),
)


def corpus_entry(k: int, base_seed: int = 0) -> dict:
    cfg = CORPUS_CONFIGS[(k // len(RICHNESS)) % len(CORPUS_CONFIGS)]
    return corpus_document(base_seed + k, RICHNESS[k % len(RICHNESS)], cfg)


def corpus(n: int = 200, base_seed: int = 0) -> List[Instance]:
    """``n`` seeded instances mixing lattice sizes and capacities."""
    return [load_instance(corpus_entry(k, base_seed)) for k in range(n)]


def random_smodel_document(rng: random.Random, max_replicated: int = 12, max_rank: int = 2,
                           cfg: RandomConfig = RandomConfig(max_edges=8)) -> dict:
    """S-model document whose replicated graph has at most ``max_replicated`` edges."""
    while True:
        W, F, pairs, _ = _random_graph(rng, cfg)
        workers, firms, replicated = {}, {}, 0
        for w in W:
            mine = [f for (v, f) in pairs if v == w]
            if mine:
                rank = rng.randint(1, min(max_rank, len(mine)))
                workers[w] = [rng.sample(mine, len(mine)) for _ in range(rank)]
                replicated += rank * len(mine)
        if replicated > max_replicated:
            continue
        for f in F:
            mine = [w for (w, g) in pairs if g == f]
            if mine:
                fondness = lambda w, f=f: -workers[w][0].index(f)  # noqa: E731
                firms[f] = _random_firm_cf(rng, cfg, mine, fondness)
        return make_smodel_document(workers, firms)


def random_smodel(seed: int, max_replicated: int = 12) -> SModelInstance:
    return load_smodel(random_smodel_document(random.Random(seed), max_replicated))
