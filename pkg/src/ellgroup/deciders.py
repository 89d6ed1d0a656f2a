"""Structural property deciders and theorem cross-check harnesses.

Each harness evaluates logically equivalent conditions through independent
code paths and reports any disagreement as a defect instead of asserting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Optional, Sequence

from .ambient import Vec
from .frame import convex_frame, quotient, sub_as_lgroup
from .lattice import lattice_intersect, lattice_sum
from .lgroup import (
    CLOSED,
    LGroupInstance,
    is_archimedean,
    archimedean_witness,
    is_strong_unit,
    is_weak_unit,
    realizable_level_patterns,
)
from . import spectra

MAIN_CONDITIONS = (2, 4, 6, 9, 10, 11, 12)
YOSIDA_CONDITIONS = (1, 4, 6)
YOSIDA_SUBSET_CAP = 12


# ---------------------------------------------------------------------------
# single-property deciders


def martinez_witness(G: LGroupInstance) -> Optional[tuple[Vec, Vec]]:
    """Pair (g, h) with h in the double polar of g but not in G(g), or None."""
    F = convex_frame(G)
    for levels, wit in sorted(realizable_level_patterns(G).items()):
        P = F.cut(levels)
        supp = frozenset(i for i, lam in enumerate(levels) if lam > 0)
        DP = F.double_polar_of_support(supp)
        if DP != P:
            for row in DP.lattice.basis:
                if not P.lattice.member(row):
                    return (wit, row)
            raise RuntimeError("double polar comparison inconsistent")
    return None


def is_martinez(G: LGroupInstance) -> bool:
    """Every principal convex subgroup equals the double polar of its generator."""
    return martinez_witness(G) is None


def is_martinez_via(G: LGroupInstance, condition: int) -> bool:
    """Independently-computed equivalents of the Martinez property."""
    F = convex_frame(G)
    if condition == 2:
        return all(F.is_d_subgroup(P) for P in F.primes())
    if condition == 4:
        return is_martinez(G)
    if condition == 6:
        # Disjunctive lattice of principal subgroups: strictly below hi there
        # is always a nonzero principal disjoint from lo.
        prins = F.principals()
        for a, b in combinations(prins, 2):
            if F.leq(a, b):
                lo, hi = a, b
            elif F.leq(b, a):
                lo, hi = b, a
            else:
                continue
            if not any(
                F.meet(lo, c) == F.bottom and F.meet(hi, c) != F.bottom
                for c in prins
            ):
                return False
        return True
    if condition == 9:
        return spectra.min_patch_dense(F)
    if condition == 10:
        return spectra.principal_pi_base(F)
    if condition == 11:
        return spectra.compact_open_distinct_closures(F)
    if condition == 12:
        return spectra.principal_is_min_intersection(F)
    raise ValueError(f"condition {condition} is not implemented")


def yosida_witness(G: LGroupInstance) -> Optional[tuple[Vec, Vec]]:
    """(a, h) with h in every maximal convex subgroup above G(a) but not in G(a)."""
    F = convex_frame(G)
    maxes = F.max_convex()
    for levels, wit in sorted(realizable_level_patterns(G).items()):
        H = F.cut(levels)
        above = [M for M in maxes if F.leq(H, M)]
        hull = F.intersect_all(above)
        if hull != H.lattice:
            for row in hull.basis:
                if not H.lattice.member(row):
                    return (wit, row)
            raise RuntimeError("hull comparison inconsistent")
    return None


def is_yosida(G: LGroupInstance) -> bool:
    """Every principal convex subgroup is an intersection of maximal ones."""
    return yosida_witness(G) is None


def has_emc(G: LGroupInstance) -> bool:
    """The maximal convex subgroups intersect in zero."""
    F = convex_frame(G)
    return F.intersect_all(F.max_convex()).rank == 0


def is_yosida_via(G: LGroupInstance, condition: int) -> bool:
    ok, _ = yosida_via_details(G, condition)
    return ok


def yosida_via_details(G: LGroupInstance, condition: int) -> tuple[bool, bool]:
    """Returns (holds, subset_search_capped)."""
    F = convex_frame(G)
    if condition == 1:
        return is_yosida(G), False
    if condition == 4:
        # Some family of maximal convex subgroups meets in zero and is patch
        # dense.  Both properties are monotone, so Max itself is the best
        # candidate; the subset sweep below is kept as a belt-and-braces check.
        maxes = F.max_convex()
        space = spectra.spec_space(F, "patch")
        if F.intersect_all(maxes).rank == 0 and spectra.is_dense(space, space.mask_of(maxes)):
            return True, False
        if len(maxes) > YOSIDA_SUBSET_CAP:
            return False, True
        for r in range(len(maxes), 0, -1):
            for fam in combinations(maxes, r):
                if F.intersect_all(fam).rank == 0 and spectra.is_dense(
                    space, space.mask_of(fam)
                ):
                    return True, False
        return False, False
    if condition == 6:
        for levels in sorted(realizable_level_patterns(G)):
            q = quotient(G, F.cut(levels))
            if not has_emc(q.instance):
                return False, False
        return True, False
    raise ValueError(f"condition {condition} is not implemented")


def is_hyperarchimedean(G: LGroupInstance) -> bool:
    """G splits as G(g) + polar(g) for every g."""
    F = convex_frame(G)
    for levels in realizable_level_patterns(G):
        P = F.cut(levels)
        supp = frozenset(i for i, lam in enumerate(levels) if lam > 0)
        pol = F.polar_of_support(supp)
        if lattice_sum(P.lattice, pol.lattice) != G.lattice:
            return False
        if lattice_intersect(P.lattice, pol.lattice).rank != 0:
            return False
    return True


def is_projectable(G: LGroupInstance) -> bool:
    """G splits as double_polar(g) + polar(g) for every g."""
    F = convex_frame(G)
    for levels in realizable_level_patterns(G):
        supp = frozenset(i for i, lam in enumerate(levels) if lam > 0)
        dp = F.double_polar_of_support(supp)
        pol = F.polar_of_support(supp)
        if lattice_sum(dp.lattice, pol.lattice) != G.lattice:
            return False
        if lattice_intersect(dp.lattice, pol.lattice).rank != 0:
            return False
    return True


def is_complemented(G: LGroupInstance) -> bool:
    """The primes that are d-subgroups are exactly the minimal primes."""
    F = convex_frame(G)
    return set(F.spec_d()) == set(F.minimal_primes())


# ---------------------------------------------------------------------------
# theorem harnesses


@dataclass
class CheckResult:
    """Outcome of one theorem harness.

    `defects` are disagreements on instances whose lattice closure is exact by
    construction; those are never expected.  `flags` carry the same findings on
    instances whose closure is only box-certified, where a disagreement can be
    an artifact of an element outside the verified box rather than a broken
    theorem.  Flags do not fail the check.
    """

    name: str
    passed: bool
    conditions: dict = field(default_factory=dict)
    defects: list[str] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    def report(self, exact: bool, msg: str) -> None:
        if exact:
            self.passed = False
            self.defects.append(msg)
        else:
            self.flags.append(msg)


def check_main_theorem(G: LGroupInstance, name: str = "") -> CheckResult:
    conds = {c: is_martinez_via(G, c) for c in MAIN_CONDITIONS}
    vals = set(conds.values())
    res = CheckResult("main_equivalence", len(vals) == 1, conds)
    if not res.passed:
        res.defects.append(f"main equivalence split on {name or G!r}: {conds}")
    wit = martinez_witness(G)
    if wit is not None:
        F = convex_frame(G)
        g, h = wit
        P = F.principal(g)
        supp = F.ambient.support(g)
        DP = F.double_polar_of_support(supp)
        if not (DP.lattice.member(h) and not P.lattice.member(h)):
            res.passed = False
            res.defects.append(f"martinez witness failed re-verification on {name or G!r}")
    return res


def check_yosida_theorem(G: LGroupInstance, name: str = "") -> CheckResult:
    conds = {}
    capped = False
    for c in YOSIDA_CONDITIONS:
        ok, cap = yosida_via_details(G, c)
        conds[c] = ok
        capped = capped or cap
    res = CheckResult("yosida_equivalence", len(set(conds.values())) == 1, conds)
    res.conditions["subset_search_capped"] = capped
    if not res.passed:
        res.defects.append(f"yosida equivalence split on {name or G!r}: {conds}")
    wit = yosida_witness(G)
    if wit is not None:
        F = convex_frame(G)
        a, h = wit
        H = F.principal(a)
        above = [M for M in F.max_convex() if F.leq(H, M)]
        if not (F.intersect_all(above).member(h) and not H.lattice.member(h)):
            res.passed = False
            res.defects.append(f"yosida witness failed re-verification on {name or G!r}")
    return res


def check_bigard(G: LGroupInstance, name: str = "") -> CheckResult:
    hyper = is_hyperarchimedean(G)
    split = is_projectable(G) and is_martinez(G)
    res = CheckResult("bigard", hyper == split, {"hyper": hyper, "projectable_and_martinez": split})
    if not res.passed:
        res.defects.append(f"bigard split on {name or G!r}")
    return res


def check_mart_yos(G: LGroupInstance, name: str = "") -> CheckResult:
    premise = has_emc(G) and is_martinez(G)
    concl = is_yosida(G) if premise else None
    res = CheckResult("emc_martinez_implies_yosida", (not premise) or bool(concl),
                      {"premise": premise, "conclusion": concl})
    if not res.passed:
        res.defects.append(f"emc+martinez did not give yosida on {name or G!r}")
    return res


def check_wu_su(G: LGroupInstance, name: str = "") -> CheckResult:
    """When every principal splits off its polar, weak units are strong; on a
    single totally ordered fiber the double-polar property matches archimedean."""
    hyper = is_hyperarchimedean(G)
    res = CheckResult("weak_units_strong", True, {"hyper": hyper})
    if hyper:
        for wit in realizable_level_patterns(G).values():
            u = G.ambient.abs(wit)
            if is_weak_unit(G, u) and not is_strong_unit(G, u):
                res.passed = False
                res.defects.append(f"weak unit {u} is not strong on {name or G!r}")
    if G.ambient.fiber_count == 1:
        if is_martinez(G) != is_archimedean(G):
            res.passed = False
            res.defects.append(f"totally ordered split on {name or G!r}")
    return res


def check_preservation(A: LGroupInstance, B: LGroupInstance, name: str = "") -> CheckResult:
    from .lgroup import direct_sum

    S = direct_sum(A, B)
    conds = {}
    ok = True
    if is_martinez(A) and is_martinez(B):
        conds["martinez_sum"] = is_martinez(S)
        ok = ok and conds["martinez_sum"]
    if is_yosida(A) and is_yosida(B):
        conds["yosida_sum"] = is_yosida(S)
        ok = ok and conds["yosida_sum"]
    conds["archimedean_sum_agrees"] = is_archimedean(S) == (is_archimedean(A) and is_archimedean(B))
    ok = ok and conds["archimedean_sum_agrees"]
    res = CheckResult("direct_sum_preservation", ok, conds)
    if not ok:
        res.defects.append(f"direct sum preservation failed on {name or (A, B)!r}: {conds}")
    return res


def check_radical_closure(G: LGroupInstance, name: str = "", pair_cap: int = 64) -> CheckResult:
    """Joins of convex subgroups that satisfy the Martinez property as groups
    in their own right satisfy it again.

    The closure argument needs genuine lattice closure of G; on box-certified
    instances a failure is flagged, not counted as a defect.
    """
    F = convex_frame(G)
    exact = G.closure.kind == CLOSED
    res = CheckResult("radical_join_closure", True, {"pairs": 0, "exact": exact})
    good = [H for H in F.elements if is_martinez(sub_as_lgroup(G, H).instance)]
    for a, b in islice(combinations(good, 2), pair_cap):
        j = F.join(a, b)
        res.conditions["pairs"] += 1
        if not is_martinez(sub_as_lgroup(G, j).instance):
            res.report(
                exact,
                f"join of martinez subgroups {a.levels}, {b.levels} broke the property on {name or G!r}",
            )
    return res


def check_quotient_lemma(G: LGroupInstance, name: str = "") -> CheckResult:
    """If G has the Martinez property, so do quotients by principal subgroups,
    and joins of principal subgroups of disjoint elements (as groups).

    Same closure caveat as check_radical_closure: flagged on box-certified
    instances instead of counted.
    """
    exact = G.closure.kind == CLOSED
    res = CheckResult(
        "martinez_quotients_and_disjoint_joins",
        True,
        {"applied": False, "exact": exact, "quotients": 0, "joins": 0},
    )
    if not is_martinez(G):
        return res
    res.conditions["applied"] = True
    F = convex_frame(G)
    pats = sorted(realizable_level_patterns(G).items())
    for levels, wit in pats:
        q = quotient(G, F.cut(levels))
        res.conditions["quotients"] += 1
        if not is_martinez(q.instance):
            res.report(exact, f"quotient by G({wit}) lost the property on {name or G!r}")
    for (la, wa), (lb, wb) in combinations(pats, 2):
        if any(x > 0 and y > 0 for x, y in zip(la, lb)):
            continue  # supports overlap: |wa| ^ |wb| != 0
        j = F.join(F.cut(la), F.cut(lb))
        res.conditions["joins"] += 1
        if not is_martinez(sub_as_lgroup(G, j).instance):
            res.report(
                exact,
                f"join of disjoint principals {la}, {lb} lost the property on {name or G!r}",
            )
    return res


def check_w_theorem(G: LGroupInstance, u: Sequence[int], name: str = "") -> CheckResult:
    """For archimedean G with weak unit u the following agree: the Martinez
    property; Yosida plus all maximal convex subgroups being d-subgroups;
    Yosida plus every weak unit being strong."""
    if not is_archimedean(G):
        raise ValueError("the unital equivalence requires an archimedean instance")
    if not is_weak_unit(G, u):
        raise ValueError("u is not a weak unit")
    F = convex_frame(G)
    c1 = is_martinez(G)
    yos = is_yosida(G)
    spec_d = set(F.spec_d())
    c3 = yos and all(M in spec_d for M in F.max_convex())
    all_weak_strong = True
    for levels, wit in realizable_level_patterns(G).items():
        w = G.ambient.abs(wit)
        if is_weak_unit(G, w) and not is_strong_unit(G, w):
            all_weak_strong = False
            break
    c4 = yos and all_weak_strong
    conds = {1: c1, 3: c3, 4: c4}
    res = CheckResult("unital_equivalence", len(set(conds.values())) == 1, conds)
    if not res.passed:
        res.defects.append(f"unital equivalence split on {name or G!r}: {conds}")
    return res


# ---------------------------------------------------------------------------
# aggregate report


@dataclass
class PropertyReport:
    name: str
    properties: dict
    main_conditions: dict
    yosida_conditions: dict
    witnesses: dict
    yosida4_subset_capped: bool
    closure: dict
    frame_size: int
    hasse_edges: int
    defects: list[str]
    flags: list[str]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "properties": dict(sorted(self.properties.items())),
            "main_conditions": {f"c{k}": v for k, v in sorted(self.main_conditions.items())},
            "yosida_conditions": {f"c{k}": v for k, v in sorted(self.yosida_conditions.items())},
            "witnesses": {
                k: ([list(v[0]), list(v[1])] if v else None)
                for k, v in sorted(self.witnesses.items())
            },
            "yosida4_subset_capped": self.yosida4_subset_capped,
            "closure": self.closure,
            "frame_size": self.frame_size,
            "hasse_edges": self.hasse_edges,
            "defects": list(self.defects),
            "flags": list(self.flags),
        }


def build_property_report(G: LGroupInstance, name: str = "") -> PropertyReport:
    F = convex_frame(G)
    main = check_main_theorem(G, name)
    yos = check_yosida_theorem(G, name)
    defects = list(main.defects) + list(yos.defects)
    flags: list[str] = []
    for chk in (check_bigard(G, name), check_mart_yos(G, name), check_wu_su(G, name)):
        defects.extend(chk.defects)
        flags.extend(chk.flags)
    arch_wit = archimedean_witness(G)
    props = {
        "martinez": is_martinez(G),
        "yosida": is_yosida(G),
        "hyperarchimedean": is_hyperarchimedean(G),
        "projectable": is_projectable(G),
        "archimedean": arch_wit is None,
        "emc": has_emc(G),
        "complemented": is_complemented(G),
    }
    yos_conds = {k: v for k, v in yos.conditions.items() if isinstance(k, int)}
    return PropertyReport(
        name=name,
        properties=props,
        main_conditions=dict(main.conditions),
        yosida_conditions=yos_conds,
        witnesses={
            "martinez": martinez_witness(G),
            "yosida": yosida_witness(G),
            "archimedean": arch_wit,
        },
        yosida4_subset_capped=bool(yos.conditions.get("subset_search_capped")),
        closure={"kind": G.closure.kind, "bound": G.closure.bound},
        frame_size=len(F.elements),
        hasse_edges=len(F.hasse_edges()),
        defects=defects,
        flags=flags,
    )
