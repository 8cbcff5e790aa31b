"""Largest irreducible degree r against the smallest abelian-subgroup index m.

For each group in the suite (and optionally random 2-generator subgroups of S_n)
prints r <= m <= (r!)^2 with the ratio m / r.
"""

import argparse
import math
import random
from dataclasses import dataclass

from smalldisc.reps.chartable import character_table
from smalldisc.reps.groups import (
    group_from_generators,
    min_abelian_subgroup_index,
    suite_groups,
    symmetric_group,
)


@dataclass
class SandwichConfig:
    random_groups: int = 20
    degree: int = 6
    max_order: int = 200
    seed: int = 0


def sample_groups(cfg: SandwichConfig):
    rng = random.Random(cfg.seed)
    Sn = symmetric_group(cfg.degree)
    pool = list(Sn.elements)
    out, tries = {}, 0
    while len(out) < cfg.random_groups and tries < 50 * cfg.random_groups:
        tries += 1
        gens = [rng.choice(pool), rng.choice(pool)]
        G = group_from_generators(cfg.degree, gens)
        if 1 < G.order <= cfg.max_order:
            out.setdefault(G.generator_string(), G)
    return out


def run(cfg: SandwichConfig):
    groups = {k: G for k, G in suite_groups().items() if G.order <= cfg.max_order}
    groups.update(sample_groups(cfg))
    print(f"{'group':<40} {'|G|':>5} {'r':>3} {'m':>5} {'(r!)^2':>8} {'m/r':>6}")
    bad = 0
    for name, G in groups.items():
        r = character_table(G).max_degree
        m = min_abelian_subgroup_index(G, cfg.max_order)
        hi = math.factorial(r) ** 2
        ok = r <= m <= hi
        bad += not ok
        print(f"{name[:40]:<40} {G.order:>5} {r:>3} {m:>5} {hi:>8} {m / r:>6.2f}{'' if ok else '  VIOLATION'}")
    print(f"{len(groups)} groups, {bad} violations")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random-groups", type=int, default=SandwichConfig.random_groups)
    ap.add_argument("--degree", type=int, default=SandwichConfig.degree)
    ap.add_argument("--max-order", type=int, default=SandwichConfig.max_order)
    ap.add_argument("--seed", type=int, default=SandwichConfig.seed)
    raise SystemExit(run(SandwichConfig(**vars(ap.parse_args()))))
