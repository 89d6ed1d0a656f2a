"""Command line front end.

Exit codes: 0 clean, 1 at least one defect or failed check, 2 usage or input
errors, 3 frame budget exceeded (see ELLGROUP_FRAME_CAP).
"""

from __future__ import annotations

import argparse
import json
import sys

from .deciders import build_property_report, check_w_theorem
from .frame import FrameCapError, convex_frame
from .fuzz import FuzzParams, run_corpus
from .gb import (
    FamilyError,
    gb_is_martinez,
    gb_is_yosida,
    gb_sample_check,
    min_in_patch_closure,
    pelement_check,
    prime_family,
)
from .instfile import BuildError, ParseError, load
from .lgroup import is_archimedean, is_strong_unit, is_weak_unit
from .rng import SplitMix64
from . import spectra


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_main(path: str):
    doc, built = load(path)
    blk = doc.main
    return doc, blk, built[blk.name]


def _family_from_block(G, blk):
    F = convex_frame(G)
    if blk.primes:
        prs = []
        for levels in blk.primes:
            H = F.by_levels(levels)
            if H is None:
                raise BuildError(f"prime {levels}: no convex subgroup with these levels")
            prs.append(H)
        return prime_family(G, prs)
    return prime_family(G, F.minimal_primes())


def cmd_analyze(args) -> int:
    doc, blk, G = _load_main(args.file)
    rep = build_property_report(G, blk.name)
    out = rep.to_json_dict()
    space = spectra.spec_space(convex_frame(G), args.topology)
    out["spectrum"] = {
        "topology": args.topology,
        "points": [list(P.levels) for P in space.points],
        "basic_opens": {
            lab: [list(P.levels) for P in space.points_of(m)]
            for lab, m in space.basic_opens
        },
    }
    if blk.unit is not None:
        u = tuple(blk.unit)
        out["unit"] = {
            "coords": list(u),
            "weak": is_weak_unit(G, u),
            "strong": is_strong_unit(G, u),
        }
        if out["unit"]["weak"] and is_archimedean(G):
            wrep = check_w_theorem(G, u, blk.name)
            out["unit"]["unital_conditions"] = {
                str(k): v for k, v in wrep.conditions.items()
            }
            out["defects"].extend(wrep.defects)
    if args.json:
        print(_dump(out))
    else:
        print(f"instance {blk.name}: frame size {out['frame_size']}, "
              f"{out['hasse_edges']} cover edges, closure {out['closure']['kind']}")
        for key, val in out["properties"].items():
            print(f"  {key}: {val}")
        print("  double-polar conditions: "
              + " ".join(f"{k}={v}" for k, v in out["main_conditions"].items()))
        print("  max-intersection conditions: "
              + " ".join(f"{k}={v}" for k, v in out["yosida_conditions"].items()))
        for k, w in out["witnesses"].items():
            if w is not None:
                print(f"  {k} witness: {w[0]} / {w[1]}")
        if "unit" in out:
            print(f"  unit {out['unit']['coords']}: weak={out['unit']['weak']} "
                  f"strong={out['unit']['strong']}")
        print(f"  spectrum[{args.topology}]: {len(out['spectrum']['points'])} points")
        for d in out["defects"]:
            print(f"  DEFECT: {d}")
    return 1 if out["defects"] else 0


def cmd_fuzz(args) -> int:
    params = FuzzParams(count=args.count, seed=args.seed)
    report = run_corpus(params)
    if args.json:
        print(_dump(report))
    else:
        print(f"ran {params.count} instances, seed {params.seed}: "
              f"{report['defect_count']} defects")
        for entry in report["instances"]:
            if entry["defects"]:
                print(f"  {entry['name']}:")
                for d in entry["defects"]:
                    print(f"    DEFECT: {d}")
        for obs in report["observations"]:
            print(f"  note: {obs}")
    return 1 if report["defect_count"] else 0


def cmd_gb(args) -> int:
    doc, blk, G = _load_main(args.file)
    fam = _family_from_block(G, blk)
    rng = SplitMix64(args.seed)
    out: dict = {
        "instance": blk.name,
        "family": [list(P.levels) for P in fam.primes],
        "martinez": gb_is_martinez(G, fam),
        "yosida": gb_is_yosida(G, fam),
        "members": [],
        "defects": [],
    }
    ok, missing = min_in_patch_closure(G, fam)
    if not ok:
        out["defects"].append(f"minimal primes escape the patch closure: {missing}")
    for Q in fam.primes:
        chk = pelement_check(G, fam, Q)
        out["members"].append(
            {
                "levels": list(Q.levels),
                "is_d": chk["signature_route"],
                "routes_agree": chk["agree"],
            }
        )
        out["defects"].extend(chk["defects"])
    out["defects"].extend(gb_sample_check(G, fam, rng, samples=args.samples))
    if args.json:
        print(_dump(out))
    else:
        print(f"instance {blk.name}: family of {len(fam.primes)} primes")
        print(f"  extension martinez: {out['martinez']}")
        print(f"  extension yosida:   {out['yosida']}")
        for m in out["members"]:
            print(f"  prime {tuple(m['levels'])}: d-subgroup={m['is_d']} "
                  f"agree={m['routes_agree']}")
        for d in out["defects"]:
            print(f"  DEFECT: {d}")
    return 1 if out["defects"] else 0


def cmd_frame(args) -> int:
    doc, blk, G = _load_main(args.file)
    F = convex_frame(G)
    primes = set(F.primes())
    mins = set(F.minimal_primes())
    maxes = set(F.max_convex())
    if args.json:
        out = {
            "instance": blk.name,
            "elements": [
                {
                    "levels": list(H.levels),
                    "rank": H.rank,
                    "prime": H in primes,
                    "minimal_prime": H in mins,
                    "maximal": H in maxes,
                }
                for H in F.elements
            ],
            "cover_edges": [
                [list(a.levels), list(b.levels)] for a, b in F.hasse_edges()
            ],
        }
        print(_dump(out))
    else:
        print(f"instance {blk.name}: {len(F.elements)} convex subgroups")
        for H in F.elements:
            tags = []
            if H in mins:
                tags.append("min-prime")
            elif H in primes:
                tags.append("prime")
            if H in maxes:
                tags.append("max")
            suffix = f"  [{', '.join(tags)}]" if tags else ""
            print(f"  {H.levels} rank {H.rank}{suffix}")
        for a, b in F.hasse_edges():
            print(f"  {a.levels} < {b.levels}")
    return 0


def cmd_spec(args) -> int:
    doc, blk, G = _load_main(args.file)
    space = spectra.spec_space(convex_frame(G), args.topology)
    if args.json:
        out = {
            "instance": blk.name,
            "topology": args.topology,
            "points": [list(P.levels) for P in space.points],
            "basic_opens": {
                lab: [list(P.levels) for P in space.points_of(m)]
                for lab, m in space.basic_opens
            },
        }
        print(_dump(out))
    else:
        print(f"instance {blk.name}: {args.topology} spectrum, "
              f"{len(space.points)} points")
        for P in space.points:
            print(f"  point {P.levels}")
        for lab, m in space.basic_opens:
            pts = " ".join(str(P.levels) for P in space.points_of(m))
            print(f"  {lab} = {{{pts}}}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ellgroup",
        description="exact structure analysis for finitely generated lattice-ordered groups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide structural properties of an instance file")
    p.add_argument("file")
    p.add_argument("--topology", choices=spectra.TOPOLOGIES, default="hull_kernel")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fuzz", help="random cross-checks of the equivalence harnesses")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("gb", help="analyze the coset-column extension over a prime family")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("frame", help="print the convex subgroup frame")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("spec", help="print a prime spectrum with its basic opens")
    p.add_argument("file")
    p.add_argument("--topology", choices=spectra.TOPOLOGIES, default="hull_kernel")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spec)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, BuildError, FamilyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FrameCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
