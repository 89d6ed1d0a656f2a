"""Symbolic extension of an instance by countably many coset coordinates.

Fix a family of proper primes with zero intersection.  The extension consists
of pairs (global part, exception table): the value at column (P, n), for n in
{1, 2, ...}, is the coset of the global part in G/P unless the table lists an
exception there.  Every element therefore agrees with a global default on a
cofinite set of each column, which keeps order, polars, and disjointness
computations exact without ever materialising the infinite index set.

Coset values are stored as canonical projections (the quotient instance drops
the coordinates of the cut), so value equality is tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .ambient import Vec
from .frame import ConvexSubgroup, Quotient, convex_frame, quotient, sub_as_lgroup
from .lattice import IntLattice, escapes_sections, lattice_intersect
from .lgroup import LGroupInstance, realizable_level_patterns
from .deciders import is_yosida
from . import spectra


class FamilyError(ValueError):
    """Raised for an unusable prime family.

    `meet_levels` is the level pattern the failure is about: the surviving
    intersection for a family that does not meet in zero, otherwise the
    offending member.
    """

    def __init__(self, msg: str, meet_levels: tuple[int, ...]):
        super().__init__(msg)
        self.meet_levels = meet_levels


@dataclass(eq=False)
class PrimeFamily:
    G: LGroupInstance
    primes: tuple[ConvexSubgroup, ...]
    quotients: tuple[Quotient, ...]

    def __eq__(self, other):
        return (
            isinstance(other, PrimeFamily)
            and self.G == other.G
            and tuple(P.levels for P in self.primes) == tuple(P.levels for P in other.primes)
        )

    def __hash__(self):
        return hash((self.G, tuple(P.levels for P in self.primes)))

    def __len__(self):
        return len(self.primes)

    def project(self, idx: int, v: Sequence[int]) -> Vec:
        return self.quotients[idx].project(v)

    def column(self, idx: int) -> LGroupInstance:
        return self.quotients[idx].instance


def prime_family(G: LGroupInstance, primes: Sequence[ConvexSubgroup]) -> PrimeFamily:
    F = convex_frame(G)
    seen = set()
    for P in primes:
        if P.levels in seen:
            raise FamilyError("family lists a prime twice", P.levels)
        seen.add(P.levels)
        if P == F.top or not F.is_prime(P):
            raise FamilyError("family member is not a proper prime", P.levels)
    meet = F.intersect_all(tuple(primes))
    if meet.rank != 0:
        from .lgroup import minimal_levels

        raise FamilyError(
            "family does not intersect in zero",
            minimal_levels(G.ambient, meet),
        )
    return PrimeFamily(G, tuple(primes), tuple(quotient(G, P) for P in primes))


# ---------------------------------------------------------------------------
# elements and arithmetic


@dataclass(frozen=True)
class GBElement:
    family: PrimeFamily
    global_part: Vec
    exceptions: tuple[tuple[tuple[int, int], Vec], ...]  # ((prime idx, n), value)

    def table(self) -> dict[tuple[int, int], Vec]:
        return dict(self.exceptions)


def _canon(family: PrimeFamily, g: Vec, table: Mapping[tuple[int, int], Vec]) -> GBElement:
    kept = {}
    for (p, n), val in table.items():
        if val != family.project(p, g):
            kept[(p, n)] = val
    return GBElement(family, g, tuple(sorted(kept.items())))


def gb_element(
    family: PrimeFamily,
    global_part: Sequence[int],
    exceptions: Optional[Mapping[tuple[int, int], Sequence[int]]] = None,
) -> GBElement:
    g = family.G.ambient.check(global_part)
    if not family.G.member(g):
        raise ValueError("global part is not an instance member")
    table = {}
    for (p, n), val in (exceptions or {}).items():
        if not (0 <= p < len(family.primes)):
            raise ValueError(f"prime index {p} out of range")
        if n < 1:
            raise ValueError("column positions are 1-based")
        col = family.column(p)
        v = col.ambient.check(val)
        if not col.member(v):
            raise ValueError(f"exception at ({p}, {n}) is not a coset value")
        table[(p, n)] = v
    return _canon(family, g, table)


def gb_from_global(family: PrimeFamily, g: Sequence[int]) -> GBElement:
    return gb_element(family, g)


def gb_single(family: PrimeFamily, p: int, n: int, g: Sequence[int]) -> GBElement:
    """Zero everywhere except column (p, n), which carries the coset of g."""
    if not (0 <= p < len(family.primes)):
        raise ValueError(f"prime index {p} out of range")
    return gb_element(family, family.G.ambient.zero(), {(p, n): family.project(p, g)})


def gb_zero(family: PrimeFamily) -> GBElement:
    return gb_element(family, family.G.ambient.zero())


def value_at(f: GBElement, p: int, n: int) -> Vec:
    for key, val in f.exceptions:
        if key == (p, n):
            return val
    return f.family.project(p, f.global_part)


def _combine2(f: GBElement, h: GBElement, on_global, on_value) -> GBElement:
    if f.family != h.family:
        raise ValueError("operands live over different families")
    fam = f.family
    g = on_global(f.global_part, h.global_part)
    table = {}
    for key in set(dict(f.exceptions)) | set(dict(h.exceptions)):
        p, n = key
        table[key] = on_value(fam.column(p).ambient, value_at(f, p, n), value_at(h, p, n))
    return _canon(fam, g, table)


def gb_add(f: GBElement, h: GBElement) -> GBElement:
    amb = f.family.G.ambient
    return _combine2(f, h, amb.add, lambda a, x, y: a.add(x, y))


def gb_neg(f: GBElement) -> GBElement:
    fam = f.family
    g = fam.G.ambient.neg(f.global_part)
    return _canon(fam, g, {k: fam.column(k[0]).ambient.neg(v) for k, v in f.exceptions})


def gb_sub(f: GBElement, h: GBElement) -> GBElement:
    return gb_add(f, gb_neg(h))


def gb_scale(f: GBElement, c: int) -> GBElement:
    fam = f.family
    g = fam.G.ambient.scale(f.global_part, c)
    return _canon(fam, g, {k: fam.column(k[0]).ambient.scale(v, c) for k, v in f.exceptions})


def gb_join(f: GBElement, h: GBElement) -> GBElement:
    # Columns are totally ordered, so the pointwise join of two coset values
    # is just the larger one; the global join projects to the column joins.
    amb = f.family.G.ambient
    return _combine2(f, h, amb.join, lambda a, x, y: y if a.leq(x, y) else x)


def gb_meet(f: GBElement, h: GBElement) -> GBElement:
    amb = f.family.G.ambient
    return _combine2(f, h, amb.meet, lambda a, x, y: x if a.leq(x, y) else y)


def gb_abs(f: GBElement) -> GBElement:
    return gb_join(f, gb_neg(f))


def gb_pos_part(f: GBElement) -> GBElement:
    return gb_join(f, gb_zero(f.family))


def gb_is_zero(f: GBElement) -> bool:
    return not any(f.global_part) and not f.exceptions


def gb_geq_zero(f: GBElement) -> bool:
    # The family intersects in zero, so nonnegative defaults in every column
    # pull back to a nonnegative global part; checking the ambient suffices.
    if not f.family.G.ambient.is_nonneg(f.global_part):
        return False
    return all(
        f.family.column(p).ambient.is_nonneg(val) for (p, _), val in f.exceptions
    )


def gb_leq(f: GBElement, h: GBElement) -> bool:
    return gb_geq_zero(gb_sub(h, f))


# ---------------------------------------------------------------------------
# cofinite column patterns, cozero sets, polars


@dataclass(frozen=True)
class CofiniteIndexSet:
    """Subset of family x {1, 2, ...}, finite or cofinite in each column.

    Per column: membership(n) = default XOR (n in flips).
    """

    columns: tuple[tuple[bool, frozenset[int]], ...]

    def member(self, p: int, n: int) -> bool:
        default, flips = self.columns[p]
        return default != (n in flips)

    def is_empty(self) -> bool:
        return all(not d and not fl for d, fl in self.columns)

    def complement(self) -> "CofiniteIndexSet":
        return CofiniteIndexSet(tuple((not d, fl) for d, fl in self.columns))

    def intersection(self, other: "CofiniteIndexSet") -> "CofiniteIndexSet":
        cols = []
        for (da, fa), (db, fb) in zip(self.columns, other.columns):
            if da and db:
                cols.append((True, fa | fb))
            elif da and not db:
                cols.append((False, fb - fa))
            elif db and not da:
                cols.append((False, fa - fb))
            else:
                cols.append((False, fa & fb))
        return CofiniteIndexSet(tuple(cols))

    def union(self, other: "CofiniteIndexSet") -> "CofiniteIndexSet":
        return self.complement().intersection(other.complement()).complement()

    def issubset(self, other: "CofiniteIndexSet") -> bool:
        return self.intersection(other.complement()).is_empty()

    def intersects(self, other: "CofiniteIndexSet") -> bool:
        return not self.intersection(other).is_empty()


def cozero(f: GBElement) -> CofiniteIndexSet:
    fam = f.family
    defaults = [any(fam.project(p, f.global_part)) for p in range(len(fam))]
    flips: list[set[int]] = [set() for _ in range(len(fam))]
    for (p, n), val in f.exceptions:
        if any(val) != defaults[p]:
            flips[p].add(n)
    return CofiniteIndexSet(
        tuple((defaults[p], frozenset(flips[p])) for p in range(len(fam)))
    )


def gb_disjoint(f: GBElement, h: GBElement) -> bool:
    return not cozero(f).intersects(cozero(h))


def gb_in_double_polar(h: GBElement, f: GBElement) -> bool:
    """h lies in the double polar of f iff its cozero set is contained in f's."""
    return cozero(h).issubset(cozero(f))


def gb_principal_witness(h: GBElement, f: GBElement) -> Optional[int]:
    """Some k with |h| <= k|f|, or None.

    Exact: the defaults and the finitely many exceptional points each give an
    exact per-point answer, and a single k = max works for all of them.
    """
    a, b = gb_abs(h), gb_abs(f)
    fam = f.family
    pairs = [(fam.G.ambient, a.global_part, b.global_part)]
    for p, n in set(dict(a.exceptions)) | set(dict(b.exceptions)):
        pairs.append((fam.column(p).ambient, value_at(a, p, n), value_at(b, p, n)))
    k = 1
    for amb, x, y in pairs:
        kk = amb.dominating_multiple(x, y)
        if kk is None:
            return None
        k = max(k, kk)
    return k


def in_prime_plus_B(f: GBElement, p: int) -> bool:
    """Membership in the extension prime over family member p.

    The subgroup collects every element whose global part lies in the prime;
    exception coordinates are unconstrained.
    """
    return f.family.primes[p].lattice.member(f.global_part)


def in_point_kernel(f: GBElement, p: int, n: int) -> bool:
    return not any(value_at(f, p, n))


# ---------------------------------------------------------------------------
# the d-subgroup condition for extension primes, four ways


def _sub_patterns_full(G: LGroupInstance, Q: ConvexSubgroup):
    """Realizable level patterns of Q, expressed in full-ambient levels,
    with witnesses lifted back to full-ambient vectors."""
    sub = sub_as_lgroup(G, Q)
    if sub.trivial:
        return {(0,) * G.ambient.fiber_count: G.ambient.zero()}
    fiber_of_slice = {sl: i for i, sl in enumerate(G.ambient.slices)}
    out = {}
    for pat, wit in realizable_level_patterns(sub.instance).items():
        full = [0] * G.ambient.fiber_count
        for j, (sl, _) in enumerate(sub.kept):
            full[fiber_of_slice[sl]] = pat[j]
        out[tuple(full)] = sub.extend(wit, G.ambient.dim)
    return out


def _meet_lattices(G: LGroupInstance, lats: Iterable[IntLattice]) -> IntLattice:
    return reduce(lattice_intersect, lats, G.lattice)


def is_P_element(
    G: LGroupInstance, family: PrimeFamily, Q: ConvexSubgroup
) -> tuple[bool, Optional[tuple[Vec, Vec]]]:
    """For every q in Q, the meet of the family members containing q stays
    inside Q.  Witness on failure: (q, element of the meet outside Q).

    Enumerates membership signatures directly: a signature S is realized in Q
    exactly when Q meet (primes in S) escapes every further section by a
    prime outside S.
    """
    idx = range(len(family.primes))
    for r in range(len(family.primes) + 1):
        for S in combinations(idx, r):
            inside = _meet_lattices(
                G, (family.primes[i].lattice for i in S)
            )
            lat0 = lattice_intersect(Q.lattice, inside) if S else Q.lattice
            sections = [
                lattice_intersect(lat0, family.primes[j].lattice)
                for j in idx
                if j not in S
            ]
            wit = escapes_sections(lat0, sections)
            if wit is None:
                continue
            if not Q.lattice.contains_lattice(inside):
                bad = next(
                    row for row in inside.basis if not Q.lattice.member(row)
                )
                return False, (wit, bad)
    return True, None


def intersection_condition(
    G: LGroupInstance, family: PrimeFamily, Q: ConvexSubgroup
) -> tuple[bool, Optional[tuple[tuple[int, ...], Vec]]]:
    """Same condition computed through level patterns: the membership
    signature of q depends only on its pattern."""
    for full, _wit in _sub_patterns_full(G, Q).items():
        V = [
            P.lattice
            for P in family.primes
            if all(a <= b for a, b in zip(full, P.levels))
        ]
        inter = _meet_lattices(G, V)
        if not Q.lattice.contains_lattice(inter):
            bad = next(row for row in inter.basis if not Q.lattice.member(row))
            return False, (full, bad)
    return True, None


def extension_prime_is_d(
    G: LGroupInstance, family: PrimeFamily, Q: ConvexSubgroup
) -> tuple[bool, Optional[tuple[Vec, Vec]]]:
    """Third route, through the extension itself: the extension prime over Q
    is a d-subgroup iff no double polar escapes it.

    Pattern witnesses are enough: membership in each family member and in Q
    is a function of the level pattern alone.
    """
    q_wits = _sub_patterns_full(G, Q).values()
    g_wits = realizable_level_patterns(G)
    for qw in q_wits:
        f = gb_from_global(family, qw)
        for gw in g_wits.values():
            if Q.lattice.member(gw):
                continue
            if gb_in_double_polar(gb_from_global(family, gw), f):
                return False, (qw, gw)
    return True, None


def closure_condition(G: LGroupInstance, family: PrimeFamily, Q: ConvexSubgroup) -> bool:
    """Fourth route, topological: every signature neighbourhood of Q inside
    the family must keep Q in its hull-kernel closure."""
    F = convex_frame(G)
    space = spectra.spec_space(F, "hull_kernel")
    qmask = space.mask_of([Q])
    for full in _sub_patterns_full(G, Q):
        V = [
            P
            for P in family.primes
            if all(a <= b for a, b in zip(full, P.levels))
        ]
        if not spectra.closure(space, space.mask_of(V)) & qmask:
            return False
    return True


def pelement_check(G: LGroupInstance, family: PrimeFamily, Q: ConvexSubgroup) -> dict:
    """Cross-check of the four routes; disagreement lands in `defects`."""
    a, wa = is_P_element(G, family, Q)
    b, wb = intersection_condition(G, family, Q)
    c, wc = extension_prime_is_d(G, family, Q)
    d = closure_condition(G, family, Q)
    out = {
        "signature_route": a,
        "pattern_route": b,
        "extension_route": c,
        "closure_route": d,
        "agree": len({a, b, c, d}) == 1,
        "witnesses": {"signature": wa, "pattern": wb, "extension": wc},
        "defects": [],
    }
    if not out["agree"]:
        out["defects"].append(
            f"d-subgroup routes split on Q={Q.levels}: "
            f"{a}/{b}/{c}/{d}"
        )
    return out


# ---------------------------------------------------------------------------
# structure of the extension


def family_in_max(G: LGroupInstance, family: PrimeFamily) -> bool:
    maxes = set(convex_frame(G).max_convex())
    return all(P in maxes for P in family.primes)


def family_patch_dense(G: LGroupInstance, family: PrimeFamily) -> bool:
    F = convex_frame(G)
    space = spectra.spec_space(F, "patch")
    return spectra.is_dense(space, space.mask_of(family.primes))


def family_dense_in_max(G: LGroupInstance, family: PrimeFamily) -> bool:
    """Patch density of the family inside the subspace of maximal members."""
    F = convex_frame(G)
    space = spectra.spec_space(F, "patch")
    maxmask = space.mask_of(F.max_convex())
    fam = space.mask_of(family.primes) & maxmask
    return all(
        (m & maxmask & fam) for _, m in space.basic_opens if m & maxmask
    )


def min_in_patch_closure(
    G: LGroupInstance, family: PrimeFamily
) -> tuple[bool, list[tuple[int, ...]]]:
    """Every minimal prime sits in the family's patch closure.  A family with
    zero intersection must contain every minimal prime, so this should never
    fail; it is kept as a machine check of that argument."""
    F = convex_frame(G)
    space = spectra.spec_space(F, "patch")
    cl = spectra.closure(space, space.mask_of(family.primes))
    missing = [
        Q.levels for Q in F.minimal_primes() if not cl & space.mask_of([Q])
    ]
    return not missing, missing


def gb_is_martinez(G: LGroupInstance, family: PrimeFamily) -> bool:
    """The extension has the double-polar property iff the family consists of
    maximal subgroups and is patch dense."""
    return family_in_max(G, family) and family_patch_dense(G, family)


def gb_martinez_witness(
    G: LGroupInstance, family: PrimeFamily
) -> Optional[tuple[GBElement, GBElement]]:
    """(b, c) with c in the double polar of b but in no principal over b.

    Exists whenever some family member P is not maximal: push a small element
    of P's successor and a large element outside it into one column."""
    F = convex_frame(G)
    maxes = set(F.max_convex())
    for p, P in enumerate(family.primes):
        if P in maxes:
            continue
        above = [K for K in F.elements if F.leq(P, K) and K != P]
        Q = min(above, key=lambda K: sum(K.levels))
        g = next(
            row for row in Q.lattice.basis if not P.lattice.member(row)
        )
        h = next(
            row for row in G.lattice.basis if not Q.lattice.member(row)
        )
        b = gb_single(family, p, 1, G.ambient.abs(g))
        c = gb_single(family, p, 1, G.ambient.abs(h))
        return b, c
    return None


def gb_is_yosida(G: LGroupInstance, family: PrimeFamily) -> bool:
    """Principal-by-maximal-intersection property of the extension, decided
    on the base side: the base must have it and the family must be patch
    dense among the maximal subgroups."""
    return is_yosida(G) and family_dense_in_max(G, family)


def weak_unit_values_criterion(G: LGroupInstance, u: Sequence[int]) -> bool:
    """For a weak unit u: the maximal convex subgroups avoiding u meet in
    zero.  Raises ValueError when u is not a weak unit."""
    from .lgroup import is_weak_unit

    if not is_weak_unit(G, u):
        raise ValueError("u is not a weak unit")
    F = convex_frame(G)
    vals = [M for M in F.max_convex() if not M.lattice.member(tuple(u))]
    return F.intersect_all(vals).rank == 0


# ---------------------------------------------------------------------------
# randomized self-checks


def random_gb(family: PrimeFamily, rng, coeff_bound: int = 3, max_exceptions: int = 3) -> GBElement:
    G = family.G
    g = G.ambient.zero()
    for row in G.lattice.basis:
        g = G.ambient.add(g, G.ambient.scale(row, rng.randint(-coeff_bound, coeff_bound)))
    table = {}
    if family.primes:
        for _ in range(rng.randint(0, max_exceptions)):
            p = rng.randrange(len(family.primes))
            n = rng.randint(1, 3)
            col = family.column(p)
            v = col.ambient.zero()
            for row in col.lattice.basis:
                v = col.ambient.add(
                    v, col.ambient.scale(row, rng.randint(-coeff_bound, coeff_bound))
                )
            table[(p, n)] = v
    return gb_element(family, g, table)


def gb_sample_check(
    G: LGroupInstance, family: PrimeFamily, rng, samples: int = 25
) -> list[str]:
    """Randomized consistency sweep over the extension's order laws and the
    double-polar / principal comparison.  Returns defect strings (empty =
    pass)."""
    defects = []
    expect_martinez = gb_is_martinez(G, family)
    for i in range(samples):
        f = random_gb(family, rng)
        h = random_gb(family, rng)
        j, m = gb_join(f, h), gb_meet(f, h)
        if gb_add(j, m) != gb_add(f, h):
            defects.append(f"join+meet != f+h at sample {i}")
        if not (gb_leq(m, f) and gb_leq(f, j)):
            defects.append(f"lattice order violated at sample {i}")
        if not gb_geq_zero(gb_abs(f)):
            defects.append(f"negative absolute value at sample {i}")
        if gb_disjoint(f, h) != gb_is_zero(gb_meet(gb_abs(f), gb_abs(h))):
            defects.append(f"disjointness mismatch at sample {i}")
        k = gb_principal_witness(h, f)
        if k is not None:
            bound = gb_scale(gb_abs(f), k)
            if not gb_leq(gb_abs(h), bound):
                defects.append(f"principal witness k={k} fails at sample {i}")
            if not gb_in_double_polar(h, f):
                defects.append(f"principal member outside double polar at sample {i}")
        elif expect_martinez and gb_in_double_polar(h, f):
            defects.append(f"double polar escaped every principal at sample {i}")
    wit = gb_martinez_witness(G, family)
    if (wit is None) != expect_martinez:
        defects.append("maximality witness disagrees with the two-part criterion")
    if wit is not None:
        b, c = wit
        if not gb_in_double_polar(c, b):
            defects.append("martinez witness: c escapes the double polar of b")
        if gb_principal_witness(c, b) is not None:
            defects.append("martinez witness: c is dominated by a multiple of b")
    return defects
