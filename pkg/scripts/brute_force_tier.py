"""Brute-force normaliser counts in the enumerable groups, printed as a markdown table.

    python3 scripts/brute_force_tier.py            # SL3(2) SL4(2) SL3(3) Sp4(2) Sp4(2)' Sp4(3)
    python3 scripts/brute_force_tier.py --with-sp6 # adds Sp6(2), order 1451520 (slow, memory hungry)
"""

import argparse
import time

from lietori import verify as vf
from lietori.classify import classify_classical
from lietori.weylclass import enumerate_torus_classes

TIER = [("A", 3, 2, False), ("A", 4, 2, False), ("A", 3, 3, False), ("C", 2, 2, False), ("C", 2, 2, True),
        ("C", 2, 3, False)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--with-sp6", action="store_true")
    args = ap.parse_args()
    tier = TIER + ([("C", 3, 2, False)] if args.with_sp6 else [])
    print("| group | class | S | algebraic | full | degenerate | classifier |")
    print("|---|---|---|---|---|---|---|")
    for family, n, q, derived in tier:
        start = time.perf_counter()
        for d in enumerate_torus_classes(family, n, q, simple_filter=False):
            r = vf.brute_force_normalizer_report(d, derived=derived)
            v = classify_classical(d, simple_filter=False)
            print(f"| {r.group} | {d.class_string} | {r.torus_order} | {r.algebraic_order} | "
                  f"{r.full_normalizer_order} | {r.degenerate} | {v.status} |")
        print(f"<!-- {family}{n}({q}){' derived' if derived else ''}: {time.perf_counter() - start:.1f}s -->")


if __name__ == "__main__":
    main()
