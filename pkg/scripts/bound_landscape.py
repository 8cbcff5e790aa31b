"""Where the lower bounds on r stop being vacuous.

Sweeps log log [L:Q] and log rd_L and prints the thm1 and thm2 values on a
grid, marking cells where the bound exceeds 1. Constants can be overridden
with a JSON file.
"""

import argparse
import math
from dataclasses import dataclass, field

from smalldisc.bounds import BoundConstants, ExtensionDatum, thm1_applicable, thm1_bound, thm2_bound


@dataclass
class LandscapeConfig:
    loglog_degs: list[float] = field(default_factory=lambda: [2, 4, 8, 12, 16, 24, 32])
    log_rds: list[float] = field(default_factory=lambda: [0.5, 1.0, 2.0, 4.0])
    degK: int = 1
    constants: str | None = None


def run(cfg: LandscapeConfig):
    c = BoundConstants.from_file(cfg.constants) if cfg.constants else BoundConstants()
    for name, fn in (("thm1", thm1_bound), ("thm2", thm2_bound)):
        print(f"\n{name}: rows log log [L:Q], columns log rd_L ('*' marks a bound > 1, '-' below threshold)")
        print(" " * 8 + "".join(f"{x:>12}" for x in cfg.log_rds))
        for ll in cfg.loglog_degs:
            cells = []
            for lr in cfg.log_rds:
                d = ExtensionDatum(log_degL=math.exp(ll), degK=cfg.degK, log_rdL=lr)
                v = fn(d, c)
                mark = "*" if v > 1 else " "
                if name == "thm1" and not thm1_applicable(d, c):
                    mark = "-"
                cells.append(f"{v:>11.4g}{mark}")
            print(f"{ll:>8g}" + "".join(cells))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degK", type=int, default=1)
    ap.add_argument("--constants")
    args = ap.parse_args()
    run(LandscapeConfig(degK=args.degK, constants=args.constants))
