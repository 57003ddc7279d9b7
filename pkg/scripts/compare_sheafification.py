"""Compare the sheafification construction with two independent routes on
every presheaf of a site up to a bound: the plus construction applied twice,
and a least-sheaf search over small sheaves.

    python3 scripts/compare_sheafification.py --bound 3
"""
import argparse
import sys
import time

from toposlab.fincat import site_by_name
from toposlab.geom import sheaf_objects
from toposlab.presheaf import enumerate_presheaves
from toposlab.sublattice import least_sheaf_search, negneg_topology, plus_plus, sheafify, unit_matches
from toposlab.theorems import CORPUS


def compare(name: str, bound: int) -> dict:
    C = site_by_name(name)
    j = negneg_topology(C)
    sheaves = list(sheaf_objects(C, bound))
    row = {"site": name, "objects": 0, "sheaves": len(sheaves), "plus_mismatch": 0, "search_mismatch": 0,
           "search_miss": 0}
    for X in enumerate_presheaves(C, bound):
        row["objects"] += 1
        a = sheafify(X, j)
        pp, u = plus_plus(X, j)
        if unit_matches(a.unit, u) is None:
            row["plus_mismatch"] += 1
        found = least_sheaf_search(X, j, sheaves + [pp])
        if found is None:
            row["search_miss"] += 1
        elif unit_matches(a.unit, found[1]) is None:
            row["search_mismatch"] += 1
    return row


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="sheafification against independent constructions")
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--sites", nargs="*", default=list(CORPUS))
    args = ap.parse_args(argv)
    bad = 0
    for name in args.sites:
        t0 = time.perf_counter()
        r = compare(name, args.bound)
        bad += r["plus_mismatch"] + r["search_mismatch"] + r["search_miss"]
        print(f"{name:16} objects={r['objects']:4} sheaves={r['sheaves']:3} plus-plus mismatches={r['plus_mismatch']} "
              f"search mismatches={r['search_mismatch']} misses={r['search_miss']} "
              f"{time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
