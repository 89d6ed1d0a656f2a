#!/usr/bin/env python3
"""Property table for instance files.

With no arguments, analyzes every .ell file under instances/; otherwise
analyzes the given files.  One row per file: frame size, closure status,
and the six structural properties of the file's main instance.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from ellgroup.deciders import build_property_report
from ellgroup.instfile import load

COLUMNS = ("archimedean", "martinez", "yosida", "hyperarchimedean", "projectable", "complemented")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("files", nargs="*", help="instance files (default: instances/*.ell)")
    args = ap.parse_args(argv)

    if args.files:
        paths = [pathlib.Path(p) for p in args.files]
    else:
        root = pathlib.Path(__file__).resolve().parent.parent
        paths = sorted((root / "instances").glob("*.ell"))
    if not paths:
        print("no instance files found", file=sys.stderr)
        return 2

    header = f"{'file':<14} {'frame':>5} {'closure':<22} " + " ".join(f"{c[:5]:>5}" for c in COLUMNS)
    print(header)
    print("-" * len(header))
    worst = 0
    for path in paths:
        doc, built = load(str(path))
        blk = doc.main
        rep = build_property_report(built[blk.name], blk.name)
        cells = " ".join(f"{'yes' if rep.properties[c] else 'no':>5}" for c in COLUMNS)
        print(f"{path.stem:<14} {rep.frame_size:>5} {rep.closure['kind']:<22} {cells}")
        for d in rep.defects:
            print(f"  DEFECT {d}")
            worst = 1
    return worst


if __name__ == "__main__":
    sys.exit(main())
