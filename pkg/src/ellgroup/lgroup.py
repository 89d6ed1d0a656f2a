"""Lattice-ordered subgroups of an ambient product of lex fibers.

An instance is a subgroup of Z^N (canonical IntLattice) that is closed under
the ambient lattice operations, together with a record of how that closure is
known: `closed_by_construction` for operations that preserve closure exactly,
or `saturated_verified` with the box bound used by `generate_lsubgroup`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ambient import Ambient, Vec, lex_level
from .lattice import (
    IntLattice,
    canonical_basis,
    escapes_sections,
    full_lattice,
    section,
    zero_lattice,
)

CLOSED = "closed_by_construction"
SATURATED = "saturated_verified"


@dataclass(frozen=True)
class ClosureStatus:
    kind: str
    bound: Optional[int] = None


class LGroupInstance:
    def __init__(self, ambient: Ambient, lattice: IntLattice, closure: ClosureStatus):
        if lattice.dim != ambient.dim:
            raise ValueError("lattice dimension != ambient dimension")
        self.ambient = ambient
        self.lattice = lattice
        self.closure = closure
        self._patterns: Optional[dict[tuple[int, ...], Vec]] = None
        self._frame = None

    def key(self):
        return (self.ambient.depths, self.lattice.basis)

    def __eq__(self, other):
        return isinstance(other, LGroupInstance) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LGroupInstance(depths={self.ambient.depths}, rank={self.lattice.rank})"

    def member(self, v: Sequence[int]) -> bool:
        return self.lattice.member(self.ambient.check(v))

    @property
    def is_trivial(self) -> bool:
        return self.lattice.rank == 0


def trivial_instance() -> LGroupInstance:
    return LGroupInstance(Ambient((1,)), zero_lattice(1), ClosureStatus(CLOSED))


def full(ambient: Ambient) -> LGroupInstance:
    return LGroupInstance(ambient, full_lattice(ambient.dim), ClosureStatus(CLOSED))


def pattern_lattice(G: LGroupInstance, levels: Sequence[int]) -> IntLattice:
    """G intersected with the convex cut at `levels` (per-fiber chain levels)."""
    coords = G.ambient.coords_above_levels(levels)
    return section(G.lattice, coords)


def minimal_levels(ambient: Ambient, lat: IntLattice) -> tuple[int, ...]:
    """Componentwise-smallest level pattern whose cut contains the lattice.

    Per fiber this is the maximum level attained by basis rows; sums of
    absolute values attain all the per-fiber maxima simultaneously, so the cut
    at this pattern is the smallest one containing the subgroup.
    """
    levels = [0] * ambient.fiber_count
    for row in lat.basis:
        for i, lam in enumerate(ambient.level_pattern(row)):
            if lam > levels[i]:
                levels[i] = lam
    return tuple(levels)


def realizable_level_patterns(G: LGroupInstance) -> dict[tuple[int, ...], Vec]:
    """Map from each exactly-attained level pattern to a witness element.

    A pattern is attained iff the cut sublattice is not covered by the cuts
    lowering a single index, which (torsion-free quotients) happens iff it
    equals one of them; `escapes_sections` decides this and produces the
    witness.
    """
    if G._patterns is not None:
        return G._patterns
    out: dict[tuple[int, ...], Vec] = {}
    cuts: dict[tuple[int, ...], IntLattice] = {}
    for levels in G.ambient.all_level_patterns():
        cuts[levels] = pattern_lattice(G, levels)
    for levels, cut in cuts.items():
        lowered = []
        for i, lam in enumerate(levels):
            if lam > 0:
                down = list(levels)
                down[i] = lam - 1
                lowered.append(cuts[tuple(down)])
        wit = escapes_sections(cut, lowered)
        if wit is not None:
            out[levels] = wit
    G._patterns = out
    return out


def pattern_witness(G: LGroupInstance, levels: tuple[int, ...]) -> Optional[Vec]:
    return realizable_level_patterns(G).get(tuple(levels))


# ---------------------------------------------------------------------------
# construction: generated subgroups


def _fiber_components(ambient: Ambient, lat: IntLattice):
    """Partition basis rows into connected components by shared fiber support."""
    rows = list(lat.basis)
    supports = [ambient.support(r) for r in rows]
    unseen = set(range(len(rows)))
    comps = []
    while unseen:
        stack = [unseen.pop()]
        fibers = set(supports[stack[0]])
        members = [stack[0]]
        changed = True
        while changed:
            changed = False
            for i in list(unseen):
                if supports[i] & fibers:
                    fibers |= supports[i]
                    members.append(i)
                    unseen.remove(i)
                    changed = True
        comps.append((sorted(fibers), [rows[i] for i in sorted(members)]))
    return comps


def _full_rank_split_candidates(ambient: Ambient, lat: IntLattice):
    """Per-fiber parts forced into the closure of full-rank multi-fiber blocks.

    When a component's rows span its whole coordinate block, D*e_top of each
    fiber lies in the lattice, so adding huge multiples of the other fibers'
    top coordinates to a row and taking positive/negative parts shows each row's
    single-fiber parts belong to any lattice-closed supergroup.  Not sound for
    rank-deficient components, so those are skipped.
    """
    out = []
    for fibers, rows in _fiber_components(ambient, lat):
        if len(fibers) < 2:
            continue
        block = sum(ambient.depths[i] for i in fibers)
        if len(rows) != block:
            continue
        for row in rows:
            for i in fibers:
                a, b = ambient.slices[i]
                if any(row[a:b]):
                    part = [0] * ambient.dim
                    part[a:b] = row[a:b]
                    if not lat.member(part):
                        out.append(tuple(part))
    return out


def _saturate(ambient: Ambient, lat: IntLattice) -> IntLattice:
    while True:
        rows = list(lat.basis)
        cands = []
        singles = list(rows)
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                singles.append(ambient.add(rows[i], rows[j]))
                singles.append(ambient.sub(rows[i], rows[j]))
        for v in singles:
            cands.append(ambient.pos_part(v))
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                cands.append(ambient.join(rows[i], rows[j]))
                cands.append(ambient.meet(rows[i], rows[j]))
        cands.extend(_full_rank_split_candidates(ambient, lat))
        new = [v for v in cands if not lat.member(v)]
        if not new:
            return lat
        lat = canonical_basis(list(lat.basis) + new, ambient.dim)


def _enumerate_box_points(rows, pivots, dim, bound):
    """Lattice points of span(rows) with pivot coordinates within the box.

    Yields only one of each +/- pair (first nonzero coefficient positive) and
    never the zero vector.  Callers must re-check the full infinity norm since
    non-pivot coordinates can exceed the bound.
    """
    n = len(rows)

    def rec(k, v, started):
        if k == n:
            if started:
                yield tuple(v)
            return
        row = rows[k]
        p = pivots[k]
        piv = row[p]
        lo = -((bound + v[p]) // piv)
        hi = (bound - v[p]) // piv
        start = 0 if not started else lo
        for c in range(start, hi + 1):
            if c:
                w = [a + c * b for a, b in zip(v, row)]
            else:
                w = list(v)
            yield from rec(k + 1, w, started or c > 0)

    yield from rec(0, [0] * dim, False)


def _box_counterexample(ambient: Ambient, lat: IntLattice, bound: int) -> Optional[Vec]:
    """Element v of lat with ||v||_inf <= bound and pos_part(v) not in lat.

    Checked per fiber-support component: positive parts decompose across
    components, and subgroups supported on a single fiber are always closed
    (the positive part of a single-fiber vector is itself or zero).
    """
    for fibers, rows in _fiber_components(ambient, lat):
        if len(fibers) < 2:
            continue
        pivots = [next(j for j, x in enumerate(r) if x) for r in rows]
        for v in _enumerate_box_points(rows, pivots, ambient.dim, bound):
            if any(abs(x) > bound for x in v):
                continue
            signs = ambient.sign_pattern(v)
            if any(s > 0 for s in signs) and any(s < 0 for s in signs):
                if not lat.member(ambient.pos_part(v)):
                    return v
                if not lat.member(ambient.pos_part(ambient.neg(v))):
                    return ambient.neg(v)
    return None


def generate_lsubgroup(ambient: Ambient, gens: Sequence[Sequence[int]], verify_box: int = 5) -> LGroupInstance:
    """Smallest known lattice-closed subgroup containing `gens`.

    Saturates under positive parts, joins and meets of basis rows and their
    pairwise sums/differences, then exhaustively verifies closure on the box
    ||v||_inf <= verify_box, adjoining any counterexample and repeating.  The
    result is independent of generator order (it is a closure fixpoint).
    """
    vecs = [ambient.check(g) for g in gens]
    lat = canonical_basis(vecs, ambient.dim)
    while True:
        lat = _saturate(ambient, lat)
        ce = _box_counterexample(ambient, lat, verify_box)
        if ce is None:
            break
        lat = canonical_basis(list(lat.basis) + [ambient.pos_part(ce)], ambient.dim)
    return LGroupInstance(ambient, lat, ClosureStatus(SATURATED, verify_box))


def _combined_status(*instances: LGroupInstance) -> ClosureStatus:
    bounds = [g.closure.bound for g in instances if g.closure.kind == SATURATED]
    if not bounds:
        return ClosureStatus(CLOSED)
    return ClosureStatus(SATURATED, min(bounds))


def direct_sum(a: LGroupInstance, b: LGroupInstance) -> LGroupInstance:
    ambient = Ambient(a.ambient.depths + b.ambient.depths)
    rows = [row + (0,) * b.ambient.dim for row in a.lattice.basis]
    rows += [(0,) * a.ambient.dim + row for row in b.lattice.basis]
    return LGroupInstance(ambient, canonical_basis(rows, ambient.dim), _combined_status(a, b))


def lex_extension(G: LGroupInstance) -> LGroupInstance:
    """Lexicographic extension by Z: each fiber gains a new top coordinate.

    Elements are n*delta + (embedded old element) where delta has 1 in every
    new top slot; such a vector is positive iff n > 0, or n == 0 and the old
    part was, which is exactly the lex order on G x Z.
    """
    old = G.ambient
    ambient = Ambient(tuple(d + 1 for d in old.depths))

    def embed(v):
        out = []
        for a, b in old.slices:
            out.append(0)
            out.extend(v[a:b])
        return tuple(out)

    delta = []
    for d in old.depths:
        delta.append(1)
        delta.extend([0] * d)
    rows = [embed(row) for row in G.lattice.basis] + [tuple(delta)]
    return LGroupInstance(ambient, canonical_basis(rows, ambient.dim), _combined_status(G))


def lex_embed(G: LGroupInstance, v: Sequence[int]) -> Vec:
    old = G.ambient
    out = []
    for a, b in old.slices:
        out.append(0)
        out.extend(v[a:b])
    return tuple(out)


# ---------------------------------------------------------------------------
# order-theoretic predicates


def is_archimedean(G: LGroupInstance) -> bool:
    """No nonzero element is infinitely smaller than another.

    n*a <= b for all n and some 0 < a iff the level pattern of a is, on its
    support, strictly below the level pattern of b; only attained patterns
    matter.
    """
    pats = list(realizable_level_patterns(G))
    for la in pats:
        if not any(la):
            continue
        for lb in pats:
            if all(x == 0 or x < y for x, y in zip(la, lb)):
                return False
    return True


def archimedean_witness(G: LGroupInstance) -> Optional[tuple[Vec, Vec]]:
    """Pair (a, b) with 0 < a and n*a <= b for every n, if one exists."""
    pats = realizable_level_patterns(G)
    for la, wa in sorted(pats.items()):
        if not any(la):
            continue
        for lb, wb in sorted(pats.items()):
            if all(x == 0 or x < y for x, y in zip(la, lb)):
                return (G.ambient.abs(wa), G.ambient.abs(wb))
    return None


def _unit_check(G: LGroupInstance, u: Sequence[int]) -> Vec:
    u = G.ambient.check(u)
    if not G.member(u):
        raise ValueError("element is not in the instance")
    if not G.ambient.is_nonneg(u):
        raise ValueError("unit candidates must be nonnegative")
    return u


def is_weak_unit(G: LGroupInstance, u: Sequence[int]) -> bool:
    """u is a weak unit iff nothing nonzero in G is disjoint from it."""
    u = _unit_check(G, u)
    coords = G.ambient.fiber_coords(G.ambient.support(u))
    return section(G.lattice, coords).rank == 0


def is_strong_unit(G: LGroupInstance, u: Sequence[int]) -> bool:
    """u is strong iff its principal convex subgroup is all of G."""
    u = _unit_check(G, u)
    return pattern_lattice(G, G.ambient.level_pattern(u)) == G.lattice


def weak_unit_exists(G: LGroupInstance) -> Optional[Vec]:
    for levels, wit in sorted(realizable_level_patterns(G).items(), reverse=True):
        supp = [i for i, lam in enumerate(levels) if lam > 0]
        coords = G.ambient.fiber_coords(supp)
        if section(G.lattice, coords).rank == 0:
            return G.ambient.abs(wit)
    return None


def strong_unit(G: LGroupInstance) -> Optional[Vec]:
    """Sum of absolute basis rows; a strong unit whenever G is nontrivial."""
    if G.is_trivial:
        return G.ambient.zero()
    u = G.ambient.zero()
    for row in G.lattice.basis:
        u = G.ambient.add(u, G.ambient.abs(row))
    return u


# ---------------------------------------------------------------------------
# decomposition helpers


def riesz_decompose(G: LGroupInstance, c: Sequence[int], ds: Sequence[Sequence[int]]) -> list[Vec]:
    """Split 0 <= c <= d_1 + ... + d_k as c = sum c_i with 0 <= c_i <= d_i.

    Greedy coordinatewise: take as much of d_1 as possible, then d_2, and so
    on.  Restricted to all-depth-1 ambients, where meets are coordinatewise
    minima and the greedy parts stay inside any lattice-closed subgroup.
    """
    if any(d != 1 for d in G.ambient.depths):
        raise ValueError("riesz_decompose requires an all-depth-1 ambient")
    c = G.ambient.check(c)
    parts = [G.ambient.check(d) for d in ds]
    if not G.ambient.is_nonneg(c) or any(not G.ambient.is_nonneg(d) for d in parts):
        raise ValueError("riesz_decompose needs nonnegative inputs")
    total = G.ambient.zero()
    for d in parts:
        total = G.ambient.add(total, d)
    if not G.ambient.leq(c, total):
        raise ValueError("c must be below the sum of the d_i")
    out = []
    rem = c
    for d in parts:
        take = G.ambient.meet(rem, d)
        out.append(take)
        rem = G.ambient.sub(rem, take)
    return out


def disjointify(G: LGroupInstance, a: Sequence[int], b: Sequence[int]) -> tuple[Vec, Vec]:
    """Replace (a, b) by (a - a^b, b - a^b); the parts meet in 0."""
    a = G.ambient.check(a)
    b = G.ambient.check(b)
    if not (G.ambient.is_nonneg(a) and G.ambient.is_nonneg(b)):
        raise ValueError("disjointify needs nonnegative inputs")
    m = G.ambient.meet(a, b)
    return G.ambient.sub(a, m), G.ambient.sub(b, m)
