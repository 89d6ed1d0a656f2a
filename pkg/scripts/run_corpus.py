#!/usr/bin/env python3
"""Run the randomized cross-check corpus and summarize the report.

The sweep draws seeded instances, runs every equivalence harness on each,
and counts defects (hard disagreements) separately from flags (failures on
box-certified instances whose lattice closure is only verified inside a
bounded region).  Exit code 1 when any defect is found.

Typical use:

    python3 scripts/run_corpus.py --count 320 --seed 0 --out report.json
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from ellgroup.fuzz import FuzzParams, run_corpus


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=320)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-fibers", type=int, default=3)
    ap.add_argument("--max-depth", type=int, default=2)
    ap.add_argument("--max-gens", type=int, default=3)
    ap.add_argument("--coeff-bound", type=int, default=3)
    ap.add_argument("--out", help="write the full JSON report to this path")
    args = ap.parse_args(argv)

    params = FuzzParams(
        count=args.count,
        max_fibers=args.max_fibers,
        max_depth=args.max_depth,
        max_gens=args.max_gens,
        coeff_bound=args.coeff_bound,
        seed=args.seed,
    )
    report = run_corpus(params)

    recipes = Counter(e["recipe"] for e in report["instances"])
    props = Counter()
    for e in report["instances"]:
        for key, val in e["properties"].items():
            if val:
                props[key] += 1
    print(f"corpus: {params.count} instances, seed {params.seed}")
    print("recipes:", ", ".join(f"{k} {v}" for k, v in sorted(recipes.items())))
    print("true counts:", ", ".join(f"{k} {v}" for k, v in sorted(props.items())))
    print(f"preservation pairs: {len(report['preservation'])}")
    print(f"defects: {report['defect_count']}, flags: {report['flag_count']}")
    for e in report["instances"]:
        for d in e["defects"]:
            print(f"  DEFECT {d}")
        for fl in e["flags"]:
            print(f"  flag   {fl}")
    for obs in report["observations"]:
        print(f"  note   {obs}")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, sort_keys=True, indent=2)
        print(f"wrote {args.out}")
    return 1 if report["defect_count"] else 0


if __name__ == "__main__":
    sys.exit(main())
