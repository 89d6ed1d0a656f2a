"""Randomized cross-checking of the structural equivalences.

Instances are drawn half from random generating sets, half from structural
recipes (full ambients, lexicographic extensions, direct sums, quotients,
subgroups).  Every equivalence harness runs on every instance; disagreements
are collected as defects, never asserted away.  Reports are plain dicts with
deterministic content for a fixed seed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .ambient import Ambient
from .deciders import (
    build_property_report,
    check_preservation,
    check_quotient_lemma,
    check_radical_closure,
    check_w_theorem,
)
from .frame import convex_frame, quotient, sub_as_lgroup
from .gb import (
    gb_is_martinez,
    gb_is_yosida,
    gb_sample_check,
    min_in_patch_closure,
    pelement_check,
    prime_family,
)
from .lgroup import (
    LGroupInstance,
    direct_sum,
    full,
    generate_lsubgroup,
    is_archimedean,
    lex_extension,
    weak_unit_exists,
)
from .rng import SplitMix64


@dataclass(frozen=True)
class FuzzParams:
    count: int = 50
    max_fibers: int = 3
    max_depth: int = 2
    max_gens: int = 3
    coeff_bound: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.count < 1 or self.max_fibers < 1 or self.max_depth < 1:
            raise ValueError("count, max_fibers, max_depth must be positive")
        if self.max_gens < 1 or self.coeff_bound < 1:
            raise ValueError("max_gens and coeff_bound must be positive")


def _random_generated(rng: SplitMix64, params: FuzzParams) -> LGroupInstance:
    depths = tuple(
        rng.randint(1, params.max_depth) for _ in range(rng.randint(1, params.max_fibers))
    )
    amb = Ambient(depths)
    gens = [
        tuple(rng.randint(-params.coeff_bound, params.coeff_bound) for _ in range(amb.dim))
        for _ in range(rng.randint(1, params.max_gens))
    ]
    return generate_lsubgroup(amb, gens, verify_box=4)


RECIPES = ("generated", "full", "lex", "sum", "quotient", "sub")


def random_instance(rng: SplitMix64, params: FuzzParams) -> tuple[str, LGroupInstance]:
    if rng.randrange(2) == 0:
        return "generated", _random_generated(rng, params)
    op = RECIPES[1 + rng.randrange(len(RECIPES) - 1)]
    base = _random_generated(rng, params)
    if op == "full":
        return op, full(base.ambient)
    if op == "lex":
        return op, lex_extension(base)
    if op == "sum":
        return op, direct_sum(base, _random_generated(rng, params))
    F = convex_frame(base)
    H = F.elements[rng.randrange(len(F.elements))]
    if op == "quotient":
        return op, quotient(base, H).instance
    return op, sub_as_lgroup(base, H).instance


def _gb_report(G: LGroupInstance, name: str, rng: SplitMix64) -> dict:
    F = convex_frame(G)
    fam = prime_family(G, F.minimal_primes())
    rep: dict = {
        "family_size": len(fam.primes),
        "martinez": gb_is_martinez(G, fam),
        "yosida": gb_is_yosida(G, fam),
        "defects": [],
        "observations": [],
    }
    ok, missing = min_in_patch_closure(G, fam)
    if not ok:
        rep["defects"].append(
            f"{name}: minimal primes escape the family patch closure: {missing}"
        )
    for Q in fam.primes:
        chk = pelement_check(G, fam, Q)
        rep["defects"].extend(f"{name}: {d}" for d in chk["defects"])
    rep["defects"].extend(f"{name}: {d}" for d in gb_sample_check(G, fam, rng))
    if rep["martinez"] != rep["yosida"]:
        rep["observations"].append(
            f"{name}: extension martinez={rep['martinez']} yosida={rep['yosida']}"
        )
    return rep


def run_corpus(params: FuzzParams) -> dict:
    rng = SplitMix64(params.seed)
    report: dict = {
        "params": asdict(params),
        "instances": [],
        "preservation": [],
        "observations": [],
        "defect_count": 0,
    }
    defects = 0
    built: list[tuple[str, LGroupInstance]] = []
    for k in range(params.count):
        recipe, G = random_instance(rng.fork(), params)
        name = f"i{k:03d}-{recipe}"
        built.append((name, G))
        prep = build_property_report(G, name)
        entry = prep.to_json_dict()
        entry["recipe"] = recipe
        for chk in (check_radical_closure(G, name), check_quotient_lemma(G, name)):
            entry["defects"].extend(chk.defects)
            entry["flags"].extend(chk.flags)
        wu = weak_unit_exists(G)
        if wu is not None and is_archimedean(G):
            wrep = check_w_theorem(G, wu, name)
            entry["unital_conditions"] = {str(k2): v for k2, v in wrep.conditions.items()}
            entry["defects"].extend(wrep.defects)
        gbrep = _gb_report(G, name, rng.fork())
        entry["extension"] = {
            "family_size": gbrep["family_size"],
            "martinez": gbrep["martinez"],
            "yosida": gbrep["yosida"],
        }
        entry["defects"].extend(gbrep["defects"])
        report["observations"].extend(gbrep["observations"])
        if entry["properties"]["yosida"] and not entry["properties"]["martinez"]:
            report["observations"].append(f"{name}: yosida without martinez")
        defects += len(entry["defects"])
        report["instances"].append(entry)
    for (na, A), (nb, B) in zip(built[::2], built[1::2]):
        chk = check_preservation(A, B, f"{na}+{nb}")
        report["preservation"].append(
            {
                "pair": f"{na}+{nb}",
                "passed": chk.passed,
                "conditions": chk.conditions,
                "defects": list(chk.defects),
            }
        )
        defects += len(chk.defects)
    report["defect_count"] = defects
    report["flag_count"] = sum(len(e["flags"]) for e in report["instances"])
    return report
