"""Tabulate degenerate torus classes of the classical families over a grid of (n, q).

    python3 scripts/classical_census.py --n 2..8 --q 2..9 --out census.csv
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from lietori.classify import classical_census
from lietori.cli import parse_range
from lietori.weylclass import CLASSICAL_FAMILIES, prime_power


@dataclass
class CensusConfig:
    families: tuple = CLASSICAL_FAMILIES
    n_values: tuple = tuple(range(2, 9))
    q_values: tuple = (2, 3, 4, 5, 7, 8, 9)


def run(cfg: CensusConfig, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["family", "n", "q", "classes", "degenerate", "clauses"])
    for family in cfg.families:
        for n in cfg.n_values:
            for q in cfg.q_values:
                if family == "B" and q % 2 == 0:
                    continue
                census = classical_census(family, [n], [q])
                if not census.total:
                    continue
                clauses = sorted({c for _, v in census.degenerate for c in v.clauses})
                w.writerow([family, n, q, census.total, len(census.degenerate), ";".join(clauses)])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="2..8")
    ap.add_argument("--q", default="2..9")
    ap.add_argument("--out")
    args = ap.parse_args()
    qs = []
    for q in parse_range(args.q):
        try:
            prime_power(q)
            qs.append(q)
        except ValueError:
            pass
    cfg = CensusConfig(n_values=tuple(parse_range(args.n)), q_values=tuple(qs))
    with open(args.out, "w") if args.out else sys.stdout as fh:
        run(cfg, fh)


if __name__ == "__main__":
    main()
