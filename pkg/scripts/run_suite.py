"""Run every statement over the corpus and write a JSON report.

    python3 scripts/run_suite.py --bound 3 --out report.json
    python3 scripts/run_suite.py --sites zmod2 idempotent --ids uiao mclarty-corollary
"""
import argparse
import json
import sys
import time

from toposlab.theorems import CORPUS, CheckConfig, list_statements, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sites", nargs="*", default=list(CORPUS))
    ap.add_argument("--ids", nargs="*", default=None, choices=list_statements())
    ap.add_argument("--out", default=None, help="report path (default: stdout)")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    rep = run_suite(args.sites, CheckConfig(bound=args.bound, seed=args.seed), ids=args.ids)
    secs = time.perf_counter() - t0
    text = json.dumps(rep, indent=2, sort_keys=True, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)

    for sid, row in rep["summary"].items():
        print(f"{sid:34} pass={row['pass']} vacuous={row['vacuous']} unknown={row['unknown']} fail={row['fail']}",
              file=sys.stderr)
    print(f"{len(rep['verdicts'])} verdicts in {secs:.1f}s", file=sys.stderr)
    return 1 if any(v["status"] == "fail" for v in rep["verdicts"]) else 0


if __name__ == "__main__":
    sys.exit(main())
