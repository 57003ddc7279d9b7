"""Compute reference values with the brute-force oracles and freeze them.

    python3 scripts/freeze_oracles.py            # rewrite tests/data/frozen.json
    python3 scripts/freeze_oracles.py --check    # compare against the frozen file

Only site definitions and the object enumeration come from the package; every
number is produced by the code in tests/oracles.py.
"""
import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from toposlab.fincat import site_by_name  # noqa: E402
from toposlab.presheaf.core import Presheaf  # noqa: E402
from toposlab.presheaf.enumerate import enumerate_presheaves  # noqa: E402
from toposlab.theorems.corpus import CORPUS  # noqa: E402

FROZEN = ROOT / "tests" / "data" / "frozen.json"


def representable(C, c):
    """``Hom(-, c)`` built straight from the composition table."""
    carrier = {d: list(C.hom(d, c)) for d in C.objects}
    action = {f: {g: C.compose(g, f) for g in carrier[t]} for f, (s, t) in C.morphisms.items()}
    return Presheaf(C, carrier, action)


def compute():
    out = {"omega": {}, "negneg_fixed": {}, "components": {}, "per_site": {}, "representables": {}}
    for name in CORPUS:
        C = site_by_name(name)
        out["omega"][name] = oracles.omega_sizes(C)
        out["negneg_fixed"][name] = {c: len(oracles.negneg_fixed(C, c)) for c in C.objects}
        out["components"][name] = len(oracles.components(C))
        Xs = enumerate_presheaves(C, 2)
        out["per_site"][name] = {
            "bound": 2,
            "objects": len(Xs),
            "decidable": [oracles.decidable(X) for X in Xs],
            "subobjects": [len(oracles.subobjects(X)) for X in Xs],
            "global_sections": [len(oracles.global_sections(X)) for X in Xs],
            "orbits": [oracles.orbit_count(X) for X in Xs],
        }
        reps = {}
        for c in C.objects:
            y = representable(C, c)
            reps[c] = {"sizes": [len(y.carrier[d]) for d in C.objects], "subobjects": len(oracles.subobjects(y))}
        out["representables"][name] = reps
    g = site_by_name("parallel_pair")
    yE = representable(g, "E")
    out["graph_exp_yE_yE"] = list(oracles.exp_sizes(yE, yE))
    out["graph_hom_yE_yE"] = len(oracles.homs(yE, yE))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    data = compute()
    if args.check:
        old = json.loads(FROZEN.read_text())
        if old != data:
            print("frozen oracle values differ from a fresh computation")
            return 1
        print("frozen oracle values reproduced")
        return 0
    FROZEN.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {FROZEN}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
