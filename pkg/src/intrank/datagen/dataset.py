"""Batch pair generation with per-record seed streams and JSONL storage."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..expr.prefix import from_prefix, to_prefix
from ..expr.random_expr import GenConfig
from . import generators as g
from .generators import (BWD, FWD, IBP, LIOUVILLE, SPECIAL, SUB, DataPair,
                         DegeneratePair, NoApplicablePair,
                         NotIntegrableByTable, builtin_seed_pairs)
from .liouville import LiouvilleConfig, ZeroDenominator, gen_liouville_mixed, \
    gen_special_liouville
from .special import SpecialConfig, gen_special_bwd

RETRIES_PER_PAIR = 50


@dataclass
class DatagenConfig:
    bwd: GenConfig = field(default_factory=lambda: GenConfig(max_ops=5))
    fwd: GenConfig = field(default_factory=lambda: GenConfig(max_ops=4))
    liouville: LiouvilleConfig = field(default_factory=LiouvilleConfig)
    special: SpecialConfig = field(default_factory=SpecialConfig)
    special_liouville_prob: float = 0.5


def _record_rng(root_seed, gen_name, index, attempt=0):
    tag = g.GENERATOR_NAMES.index(gen_name)
    return np.random.default_rng(
        np.random.SeedSequence([int(root_seed), tag, int(index), attempt]))


def generate_one(gen_name, cfg: DatagenConfig, rng, pool, pool_index, seed=0):
    if gen_name == BWD:
        return g.gen_bwd(cfg.bwd, rng, seed=seed)
    if gen_name == FWD:
        return g.gen_fwd(cfg.fwd, rng, seed=seed)
    if gen_name == IBP:
        return g.gen_ibp(pool, rng, pool_index=pool_index, seed=seed)
    if gen_name == SUB:
        return g.gen_sub(pool, rng, seed=seed)
    if gen_name == LIOUVILLE:
        return gen_liouville_mixed(cfg.liouville, rng, seed=seed)
    if gen_name == SPECIAL:
        if rng.random() < cfg.special_liouville_prob:
            return gen_special_liouville(cfg.liouville, rng, cfg.special,
                                         seed=seed)
        return gen_special_bwd(cfg.special, rng, seed=seed)
    raise ValueError(f"unknown generator {gen_name!r}")


def generate_pairs(counts, root_seed, cfg: DatagenConfig | None = None,
                   max_len_tokens=None):
    """Generate verified pairs per generator quota.

    counts: mapping generator name -> requested number of pairs.  FWD is
    attempt-based (its rule-table integrator misses by design), all other
    quotas are met exactly unless the retry budget runs dry.  Returns
    (pairs, stats).
    """
    cfg = cfg or DatagenConfig()
    stats = {name: {"requested": counts.get(name, 0), "emitted": 0,
                    "attempts": 0, "dropped_unverified": 0, "degenerate": 0}
             for name in g.GENERATOR_NAMES}
    pairs = []
    pool = builtin_seed_pairs()
    pool_index = g.build_pool_index(pool)

    def admit(pair):
        if max_len_tokens is not None and \
                pair.integrand.tree_size + 1 > max_len_tokens:
            return False
        return pair.verified

    order = [BWD, FWD, IBP, SUB, LIOUVILLE, SPECIAL]
    for name in order:
        want = counts.get(name, 0)
        st = stats[name]
        if name == FWD:
            for i in range(want):
                st["attempts"] += 1
                rng = _record_rng(root_seed, name, i)
                try:
                    pair = generate_one(name, cfg, rng, pool, pool_index, seed=i)
                except (NotIntegrableByTable, DegeneratePair):
                    continue
                if admit(pair):
                    st["emitted"] += 1
                    pairs.append(pair)
            continue
        for i in range(want):
            got = None
            for attempt in range(RETRIES_PER_PAIR):
                st["attempts"] += 1
                rng = _record_rng(root_seed, name, i, attempt)
                try:
                    pair = generate_one(name, cfg, rng, pool, pool_index, seed=i)
                except (DegeneratePair, ZeroDenominator):
                    st["degenerate"] += 1
                    continue
                except (NoApplicablePair, NotIntegrableByTable):
                    continue
                if admit(pair):
                    got = pair
                    break
                st["dropped_unverified"] += 1
            if got is not None:
                st["emitted"] += 1
                pairs.append(got)
        if name == BWD:
            pool = pool + [p for p in pairs if p.generator == BWD]
            pool_index = g.build_pool_index(pool)

    for name in (FWD,):
        att = stats[name]["attempts"]
        stats[name]["hit_rate"] = (stats[name]["emitted"] / att) if att else 0.0
    return pairs, stats


def pair_to_record(pair: DataPair, pair_id):
    return {
        "id": pair_id,
        "generator": pair.generator,
        "seed": pair.seed,
        "integrand_prefix": to_prefix(pair.integrand),
        "integral_prefix": to_prefix(pair.integral),
        "verified": bool(pair.verified),
    }


def record_to_pair(rec) -> DataPair:
    return DataPair(
        integrand=from_prefix(rec["integrand_prefix"]),
        integral=from_prefix(rec["integral_prefix"]),
        generator=rec["generator"],
        seed=rec.get("seed", 0),
        verified=rec.get("verified", False),
    )


def write_pairs(path, pairs):
    with open(path, "w") as fh:
        for i, pair in enumerate(pairs):
            fh.write(json.dumps(pair_to_record(pair, f"{i:06d}"),
                                separators=(",", ":")) + "\n")


def read_pairs(path):
    """Returns a list of (id, DataPair)."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            out.append((rec["id"], record_to_pair(rec)))
    return out
