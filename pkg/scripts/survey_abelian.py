"""Root discriminants of every abelian field up to a conductor, against the (d/2)^(1/4) floor.

Prints the tightest fields per degree and writes the full table as CSV if asked.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from smalldisc.bounds import abelian_bound, certify_abelian
from smalldisc.fields import enumerate_abelian_fields


@dataclass
class SurveyConfig:
    max_conductor: int = 200
    top: int = 3
    csv_path: str | None = None


def run(cfg: SurveyConfig):
    flds = enumerate_abelian_fields(cfg.max_conductor)
    rows = []
    for f in flds:
        margin = f.root_discriminant / abelian_bound(f.degree) if f.degree > 2 else None
        rows.append((f.name(), f.degree, f.r1, f.r2, f.root_discriminant, margin, certify_abelian(f)))
    by_degree: dict[int, list] = {}
    for r in rows:
        if r[5] is not None:
            by_degree.setdefault(r[1], []).append(r)
    print(f"{len(rows)} fields with conductor <= {cfg.max_conductor}")
    print(f"{'degree':>6} {'count':>6} {'min rd/floor':>13}  tightest")
    for d in sorted(by_degree):
        group = sorted(by_degree[d], key=lambda r: r[5])
        names = ", ".join(r[0] for r in group[: cfg.top])
        print(f"{d:>6} {len(group):>6} {group[0][5]:>13.4f}  {names}")
    violations = [r for r in rows if r[6] is False]
    print(f"violations: {len(violations)}")
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["name", "degree", "r1", "r2", "rd", "margin", "certified"])
            w.writerows(rows)
    return 1 if violations else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-conductor", type=int, default=SurveyConfig.max_conductor)
    ap.add_argument("--top", type=int, default=SurveyConfig.top)
    ap.add_argument("--csv", dest="csv_path")
    sys.exit(run(SurveyConfig(**vars(ap.parse_args()))))
